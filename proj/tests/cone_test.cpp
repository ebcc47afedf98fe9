#include <gtest/gtest.h>

#include "gencontact/builders.hpp"
#include "gencontact/cone.hpp"
#include "gencontact/errors.hpp"
#include "gencontact/expression.hpp"
#include "gencontact/mixed_pair.hpp"

namespace gencontact {
namespace {

GenSection sec(const ModelPtr& m, const std::string& text) { return parse_section(text, Scope(m)); }

std::vector<BuiltStructure> sample_structures() {
  return {
      builtin_example("s3-family", {}),
      builtin_example("s3-family", {{"f", "0"}, {"g", "0"}}),
      builtin_example("s3-family", {{"h", "z*w"}}),
      builtin_example("heisenberg", {{"b", "1"}, {"c", "-2"}}),
      builtin_example("cosymplectic", {{"model", "torus"}, {"theta", "a2^a3"}, {"eta", "a1"}}),
      builtin_example("almost-contact", {{"model", "torus"}, {"phi", "X1: X2, X2: -X1"}, {"xi", "X3"}, {"eta", "a3"}}),
  };
}

TEST(Cone, SphereLiftSendsConeLineToTheFrame) {
  auto s = builtin_example("s3-family", {});
  const ModelPtr& m = s.pair.model;
  const ConeStructure c = sekiya_to_cone(sekiya_from_triple(s.triple));
  const ModelPtr& cone = c.cone;
  EXPECT_EQ(apply(c.j, sec(cone, "Dt")), to_cone(sec(m, "-V1")));
  EXPECT_EQ(apply(c.j, sec(cone, "dt")), to_cone(sec(m, "-nu1 - f*V2 - g*V3")));
  EXPECT_EQ(apply(c.j, to_cone(s.triple.e1)), -sec(cone, "Dt"));
  EXPECT_EQ(apply(c.j, to_cone(s.triple.e2)), -sec(cone, "dt"));
  EXPECT_TRUE(in_sek0(c));
}

TEST(Cone, LiftIsComplexAndRoundTrips) {
  for (const auto& s : sample_structures()) {
    SCOPED_TRACE(s.builder);
    const SekiyaQuadruple q = sekiya_from_triple(s.triple);
    const ConeStructure c = sekiya_to_cone(q);
    validate(c);
    EXPECT_TRUE(in_sek0(c));
    const SekiyaQuadruple back = cone_to_sekiya(c);
    EXPECT_EQ(back.phi, q.phi);
    EXPECT_EQ(back.e1, q.e1);
    EXPECT_EQ(back.e2, q.e2);
    EXPECT_TRUE(back.lambda.is_zero());
    const ContactTriple t = triple_from_sekiya(back);
    EXPECT_EQ(t.phi, s.triple.phi);
  }
}

TEST(Cone, NonzeroLambdaRoundTrips) {
  auto s = builtin_example("heisenberg", {{"b", "1"}, {"c", "0"}});
  const GaussianRational lambda(mpq_class(3, 4));
  const SekiyaQuadruple q = sekiya_from_triple(s.triple, lambda);
  EXPECT_THROW(triple_from_sekiya(q), ValidationError);
  const ConeStructure c = sekiya_to_cone(q);
  EXPECT_FALSE(in_sek0(c));
  const SekiyaQuadruple back = cone_to_sekiya(c);
  EXPECT_EQ(back.lambda, lambda);
  EXPECT_EQ(back.phi, q.phi);
  EXPECT_EQ(back.e1, q.e1);
  EXPECT_EQ(back.e2, q.e2);
}

TEST(Cone, IrrationalConeFactorIsRejected) {
  auto s = builtin_example("heisenberg", {{"b", "1"}, {"c", "0"}});
  EXPECT_THROW(sekiya_from_triple(s.triple, GaussianRational(1)), ValidationError);
}

TEST(Cone, TypeDropsByAtMostOne) {
  for (const auto& s : sample_structures()) {
    SCOPED_TRACE(s.builder);
    const ConeStructure c = sekiya_to_cone(sekiya_from_triple(s.triple));
    for (const auto& row : cone_type(s.pair, c)) {
      SCOPED_TRACE(row.point);
      EXPECT_LE(row.t_j, row.t_l);
      EXPECT_LE(row.t_l - row.t_j, 1u);
      EXPECT_EQ(row.t_j == row.t_l, row.jdt_in_al);
    }
  }
}

TEST(Cone, SphereTypesFollowTheZeroSetOfH) {
  auto s = builtin_example("s3-family", {{"h", "z*w"}});
  const ConeStructure c = sekiya_to_cone(sekiya_from_triple(s.triple));
  for (const auto& row : cone_type(s.pair, c)) {
    SCOPED_TRACE(row.point);
    if (row.t_l == 2) {
      EXPECT_EQ(row.t_j, 2u);
    } else {
      EXPECT_EQ(row.t_j, 0u);
    }
  }
}

TEST(Cone, SwappedLiftIsTheAnnihilatorOfTheConeSpinor) {
  for (const auto& s : sample_structures()) {
    SCOPED_TRACE(s.builder);
    const MixedPair mp = mixed_pair_of(s);
    const ContactTriple swapped = triple_from_pair(s.pair, FrameChoice{FunctionElement(1), true});
    const ConeStructure c = sekiya_to_cone(sekiya_from_triple(swapped));
    const DifferentialForm rho = cone_spinor(mp);
    const auto lj = eigenbundle(c);
    for (const auto& p : s.pair.model->points()) {
      std::vector<GenSection> at;
      for (const auto& x : lj) at.push_back(x.evaluate(p));
      EXPECT_TRUE(same_span_at(annihilator_basis_at(*c.cone, rho, p), at, p)) << p.label;
    }
  }
}

}  // namespace
}  // namespace gencontact
