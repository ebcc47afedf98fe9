#include <gtest/gtest.h>

#include "gencontact/builders.hpp"
#include "gencontact/cone.hpp"
#include "gencontact/errors.hpp"
#include "gencontact/expression.hpp"
#include "gencontact/mixed_pair.hpp"

namespace gencontact {
namespace {

GenSection sec(const ModelPtr& m, const std::string& text) { return parse_section(text, Scope(m)); }
DifferentialForm form(const ModelPtr& m, const std::string& text) { return parse_form(text, Scope(m)); }

std::vector<BuiltStructure> with_spinors() {
  return {
      builtin_example("s3-family", {}),
      builtin_example("s3-family", {{"f", "0"}, {"g", "0"}}),
      builtin_example("s3-family", {{"h", "z*w"}}),
      builtin_example("s3-family", {{"h", "z^3"}}),
      builtin_example("heisenberg", {{"b", "1"}, {"c", "0"}}),
      builtin_example("heisenberg", {{"b", "0"}, {"c", "3"}}),
      builtin_example("cosymplectic", {{"model", "heisenberg"}, {"theta", "a2^a3"}, {"eta", "a1"}}),
      builtin_example("cosymplectic", {{"model", "torus"}, {"theta", "a2^a3"}, {"eta", "a1"}}),
      builtin_example("almost-contact", {{"model", "torus"}, {"phi", "X1: X2, X2: -X1"}, {"xi", "X3"}, {"eta", "a3"}}),
  };
}

TEST(MixedPair, SphereSpinors) {
  auto s = builtin_example("s3-family", {});
  const ModelPtr& m = s.pair.model;
  const MixedPair mp = mixed_pair_of(s);
  EXPECT_EQ(mp.rho1, form(m, "i*nu2 + nu3"));
  EXPECT_EQ(mp.rho2, -form(m, "(g + i*f) + nu1^(i*nu2 + nu3)"));
  // rho2 is minus the usual representative, so the pairing flips sign too.
  EXPECT_EQ(mukai_pairing(*m, mp.rho1, mp.rho2.conj()), form(m, "-2*i*nu1^nu2^nu3"));
}

TEST(MixedPair, CosymplecticSpinors) {
  auto s = builtin_example("cosymplectic", {{"model", "torus"}, {"theta", "a2^a3"}, {"eta", "a1"}});
  const ModelPtr& m = s.pair.model;
  const MixedPair mp = mixed_pair_of(s);
  const DifferentialForm rho1 = form(m, "i*a2^a3").exp();
  EXPECT_EQ(mp.rho1, rho1);
  EXPECT_EQ(mp.rho2, form(m, "a1").wedge(rho1));
}

TEST(MixedPair, CommonNullFormWhenNoSpinorIsGiven) {
  auto s = builtin_example("s3-family", {{"f", "0"}, {"g", "0"}});
  const MixedPair mp = mixed_pair_from_pair(s.pair, s.triple);
  validate(mp);
  for (const auto& p : s.pair.model->points()) {
    EXPECT_EQ(spinor_type_at(mp.rho1, p), 1u);
    EXPECT_EQ(spinor_type_at(mp.rho2, p), 2u);
  }
}

TEST(MixedPair, DegenerateAndUnrelatedSpinorsAreRejected) {
  auto s = builtin_example("s3-family", {{"f", "0"}, {"g", "0"}});
  const ModelPtr& m = s.pair.model;
  MixedPair mp = mixed_pair_of(s);
  MixedPair zeroed = mp;
  zeroed.rho2 = mp.rho2.scaled(parse_scalar("x1", Scope(m)));
  EXPECT_THROW(validate(zeroed), ValidationError);
  MixedPair unrelated = mp;
  unrelated.rho2 = form(m, "nu2^nu3");
  EXPECT_THROW(validate(unrelated), ValidationError);
  EXPECT_THROW(mixed_pair_from_pair(s.pair, s.triple, form(m, "nu1")), ValidationError);
}

TEST(MixedPair, SphereIntegrabilityWitness) {
  auto s = builtin_example("s3-family", {});
  const ModelPtr& m = s.pair.model;
  const MixedPair mp = mixed_pair_of(s);
  // In the shipped orientation d rho1 = 2 i nu1 rho1.
  const GenSection v = sec(m, "-2*i*(-nu1 - f*V2 - g*V3) - (g + i*f)*(V2 + i*V3)");
  EXPECT_EQ(exterior_d(*m, mp.rho1), clifford_act(*m, v, mp.rho1));
  const auto r = mixed_pair_integrability(mp);
  EXPECT_TRUE(r.integrable);
  ASSERT_TRUE(r.first.v);
  EXPECT_EQ(clifford_act(*m, *r.first.v, mp.rho1), exterior_d(*m, mp.rho1));
  EXPECT_EQ(r.second.status, SpinorEquation::NoSolution);
  EXPECT_FALSE(r.strong);
}

TEST(MixedPair, CosymplecticIntegrability) {
  auto closed = mixed_pair_of(builtin_example("cosymplectic", {{"model", "heisenberg"}, {"theta", "a2^a3"}, {"eta", "a1"}}));
  auto r = mixed_pair_integrability(closed);
  EXPECT_TRUE(r.strong);
  EXPECT_TRUE(r.first.v->is_zero());
  EXPECT_TRUE(r.second.v->is_zero());
  auto open = mixed_pair_of(builtin_example("cosymplectic", {{"model", "heisenberg"}, {"theta", "a1^a2"}, {"eta", "a3"}}));
  auto q = mixed_pair_integrability(open);
  EXPECT_TRUE(q.integrable);
  EXPECT_EQ(q.second.status, SpinorEquation::NoSolution);
  EXPECT_FALSE(q.strong);
}

TEST(MixedPair, TypeSumLaw) {
  for (const auto& s : with_spinors()) {
    SCOPED_TRACE(s.builder);
    const MixedPair mp = mixed_pair_of(s);
    for (const auto& row : type_sum_check(mp, s.pair)) {
      EXPECT_EQ(2 * row.t_l, row.type1 + row.type2 + 1) << row.point;
    }
  }
}

TEST(MixedPair, SphereTypeTable) {
  auto s = builtin_example("s3-family", {{"h", "z*w"}});
  for (const auto& row : type_sum_check(mixed_pair_of(s), s.pair)) {
    SCOPED_TRACE(row.point);
    EXPECT_EQ(row.type1, 1u);
    EXPECT_EQ(row.type2, row.t_l == 2 ? 2u : 0u);
  }
}

TEST(MixedPair, ConeSpinorIsPure) {
  for (const auto& s : with_spinors()) {
    SCOPED_TRACE(s.builder);
    const MixedPair mp = mixed_pair_of(s);
    const ModelPtr cone = cone_model(mp.model);
    const DifferentialForm rho = cone_spinor(mp);
    const GenSection a = sec(cone, "dt") - to_cone(mp.e1).scaled(FunctionElement(GaussianRational::i()));
    const GenSection b = sec(cone, "Dt") - to_cone(mp.e2).scaled(FunctionElement(GaussianRational::i()));
    EXPECT_TRUE(annihilates(*cone, a, rho));
    EXPECT_TRUE(annihilates(*cone, b, rho));
    for (const auto& p : mp.model->points()) {
      EXPECT_TRUE(is_pure_at(*cone, rho, p)) << p.label;
      EXPECT_FALSE(mukai_pairing(*cone, rho, rho.conj()).evaluate(p).is_zero()) << p.label;
    }
  }
}

TEST(MixedPair, ConeSpinorOfUnrelatedFormsIsNotPure) {
  auto s = builtin_example("s3-family", {{"f", "0"}, {"g", "0"}});
  const ModelPtr& m = s.pair.model;
  MixedPair fake{m, form(m, "i*nu2 + nu3"), form(m, "1 + nu1^nu2"), s.triple.e1, s.triple.e2};
  const ModelPtr cone = cone_model(m);
  const DifferentialForm rho = cone_spinor(fake);
  for (const auto& p : m->points()) EXPECT_FALSE(is_pure_at(*cone, rho, p)) << p.label;
}

TEST(MixedPair, CircleTypes) {
  for (const auto& s : with_spinors()) {
    SCOPED_TRACE(s.builder);
    for (const auto& row : circle_type_check(mixed_pair_of(s), s.pair)) {
      SCOPED_TRACE(row.point);
      EXPECT_EQ(row.t_j, row.type1);
      EXPECT_EQ(row.t_l == row.t_j, row.type1 == row.type2 + 1);
    }
  }
}

}  // namespace
}  // namespace gencontact
