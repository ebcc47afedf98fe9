#include <gtest/gtest.h>

#include "gencontact/builders.hpp"
#include "gencontact/builtins.hpp"
#include "gencontact/errors.hpp"
#include "gencontact/expression.hpp"
#include "gencontact/spinor.hpp"

namespace gencontact {
namespace {

GenSection sec(const ModelPtr& m, const std::string& text) { return parse_section(text, Scope(m)); }
DifferentialForm form(const ModelPtr& m, const std::string& text) { return parse_form(text, Scope(m)); }

std::vector<std::pair<unsigned, unsigned>> types_of(const ContactPair& p) {
  std::vector<std::pair<unsigned, unsigned>> out;
  for (const auto& row : geometric_type(p)) out.emplace_back(row.p_e, row.t_l);
  return out;
}

BuiltStructure torus_almost_contact() {
  return builtin_example("almost-contact", {{"model", "torus"}, {"phi", "X1: X2, X2: -X1"}, {"xi", "X3"}, {"eta", "a3"}});
}

TEST(SphereFamily, PublishedFrameIsAlreadyNormalised) {
  auto s = builtin_example("s3-family", {});
  const ModelPtr& m = s.pair.model;
  EXPECT_EQ(m->name(), "s3-formal");
  EXPECT_EQ(s.triple.e1, sec(m, "-V1"));
  EXPECT_EQ(s.triple.e2, sec(m, "-nu1 - f*V2 - g*V3"));
  const ContactPair back = pair_from_triple(s.triple);
  EXPECT_TRUE(same_span(*m, back.l, {sec(m, "V2 - i*V3"), sec(m, "nu3 - g*V1 - i*(-nu2 + f*V1)")}));
}

TEST(SphereFamily, TypeJumpsOnTheZeroSetOfH) {
  auto s = builtin_example("s3-family", {{"h", "z*w"}});
  const auto& pts = s.pair.model->points();
  const auto types = geometric_type(s.pair);
  ASSERT_EQ(types.size(), pts.size());
  for (std::size_t k = 0; k < pts.size(); ++k) {
    const GaussianRational x1 = *pts[k].values[0], x2 = *pts[k].values[1];
    const GaussianRational x3 = *pts[k].values[2], x4 = *pts[k].values[3];
    const GaussianRational h = (x1 + GaussianRational::i() * x2) * (x3 + GaussianRational::i() * x4);
    SCOPED_TRACE(pts[k].label);
    EXPECT_EQ(types[k].p_e, h.is_zero() ? 1u : 2u);
    EXPECT_EQ(types[k].t_l, h.is_zero() ? 2u : 1u);
  }
}

TEST(SphereFamily, ZeroDataIsPoonWade) {
  auto s = builtin_example("s3-family", {{"f", "0"}, {"g", "0"}});
  auto w = is_poon_wade(s.pair);
  ASSERT_TRUE(w);
  EXPECT_TRUE(w->vector.is_vector());
  EXPECT_TRUE(w->form.is_form());
  auto generic = builtin_example("s3-family", {{"h", "z*w"}});
  EXPECT_FALSE(is_poon_wade(generic.pair));
}

TEST(Triple, FrameChoiceLeavesPhiAndLUnchanged) {
  for (const auto& s : {builtin_example("s3-family", {}), builtin_example("heisenberg", {{"b", "1"}, {"c", "-2"}}),
                        torus_almost_contact()}) {
    SCOPED_TRACE(s.builder);
    const ContactTriple base = triple_from_pair(s.pair);
    for (const auto& choice : {FrameChoice{FunctionElement(GaussianRational(2)), false},
                               FrameChoice{FunctionElement(GaussianRational(mpq_class(-1, 3))), false},
                               FrameChoice{FunctionElement(GaussianRational(1)), true},
                               FrameChoice{FunctionElement(GaussianRational(5)), true}}) {
      const ContactTriple t = triple_from_pair(s.pair, choice);
      validate(t);
      EXPECT_EQ(t.phi, base.phi);
      const ContactPair back = pair_from_triple(t);
      EXPECT_TRUE(same_span(*s.pair.model, back.l, s.pair.l));
      EXPECT_TRUE(same_span(*s.pair.model, {back.e[0], back.e[1]}, {s.pair.e[0], s.pair.e[1]}));
    }
  }
}

TEST(Triple, ZeroPhiIsRejected) {
  auto s = torus_almost_contact();
  ContactTriple t = s.triple;
  t.phi = Matrix(6, 6);
  EXPECT_THROW(validate(t), ValidationError);
}

TEST(Triple, CosymplecticRoundTrip) {
  ModelPtr m = builtin_model("torus");
  auto s = builtin_example("cosymplectic", {{"model", "torus"}, {"theta", "a1^a2"}, {"eta", "a3 + a1"}});
  const ContactPair back = pair_from_triple(s.triple);
  EXPECT_TRUE(same_span(*m, back.l, s.pair.l));
  EXPECT_TRUE(same_span(*m, {back.e[0], back.e[1]}, {s.pair.e[0], s.pair.e[1]}));
  EXPECT_EQ(types_of(s.pair), (std::vector<std::pair<unsigned, unsigned>>(3, {1, 1})));
  auto data = as_cosymplectic(s.triple);
  ASSERT_TRUE(data);
  EXPECT_EQ(data->theta, form(m, "a1^a2"));
}

TEST(Triple, AlmostContactEigenbundle) {
  auto s = torus_almost_contact();
  const ModelPtr& m = s.pair.model;
  EXPECT_TRUE(same_span(*m, s.pair.l, {sec(m, "X1 - i*X2"), sec(m, "a1 - i*a2")}));
  EXPECT_EQ(types_of(s.pair), (std::vector<std::pair<unsigned, unsigned>>(3, {1, 2})));
  auto r = poon_wade_reduce(s.pair);
  EXPECT_TRUE(r.omega.is_zero());
  EXPECT_EQ(r.triple.phi, s.triple.phi);
}

TEST(Heisenberg, TypeAndPoonWadeWitness) {
  auto s = builtin_example("heisenberg", {{"b", "1"}, {"c", "0"}});
  const ModelPtr& m = s.pair.model;
  EXPECT_EQ(types_of(s.pair), (std::vector<std::pair<unsigned, unsigned>>(3, {1, 1})));
  auto w = is_poon_wade(s.pair);
  ASSERT_TRUE(w);
  EXPECT_TRUE(same_span(*m, {w->vector}, {sec(m, "X1 + X3")}));
  EXPECT_TRUE(same_span(*m, {w->form}, {sec(m, "a1")}));
  auto r = poon_wade_reduce(s.pair, ReductionMode::Cosymplectic);
  auto data = as_cosymplectic(r.triple);
  ASSERT_TRUE(data);
  EXPECT_EQ(data->eta, form(m, "a1"));
}

TEST(PoonWade, GeneralReductionStraightensE) {
  // E = span(X + alpha, beta) with alpha = a2, beta = a1 on the cosymplectic torus.
  auto s = builtin_example("cosymplectic", {{"model", "torus"}, {"theta", "a2^a3"}, {"eta", "a1"}});
  const ModelPtr& m = s.pair.model;
  const DifferentialForm shear = form(m, "a1^a2");
  const ContactPair moved = b_transform(s.pair, shear);
  EXPECT_EQ(moved.e[0], sec(m, "X1 + a2"));
  EXPECT_FALSE(is_poon_wade(moved));
  auto r = poon_wade_reduce(moved);
  EXPECT_EQ(r.omega, form(m, "a2^a1"));
  EXPECT_EQ(r.pair.e[0], sec(m, "X1"));
  EXPECT_TRUE(is_poon_wade(r.pair));
}

TEST(PoonWade, CosymplecticModeUndoesAGauge) {
  auto s = builtin_example("cosymplectic", {{"model", "heisenberg"}, {"theta", "a2^a3"}, {"eta", "a1"}});
  const ModelPtr& m = s.pair.model;
  const ContactPair moved = b_transform(s.pair, form(m, "x*a1^a2 + a1^a3 + 2*a2^a3"));
  auto r = poon_wade_reduce(moved, ReductionMode::Cosymplectic);
  ASSERT_TRUE(as_cosymplectic(r.triple));
  EXPECT_EQ(types_of(r.pair), types_of(s.pair));
  validate(r.pair);
  validate(r.triple);
}

TEST(PoonWade, ContactModeUndoesAGauge) {
  auto s = torus_almost_contact();
  const ModelPtr& m = s.pair.model;
  const ContactPair moved = b_transform(s.pair, form(m, "t1*a1^a2 + a1^a3 - a2^a3"));
  auto r = poon_wade_reduce(moved, ReductionMode::Contact);
  auto data = as_almost_contact(r.triple);
  ASSERT_TRUE(data);
  EXPECT_EQ(data->eta, form(m, "a3"));
  EXPECT_THROW(poon_wade_reduce(moved, ReductionMode::Cosymplectic), ValidationError);
}

TEST(PoonWade, RequiresRankOneAnchor) {
  auto s = builtin_example("s3-family", {{"h", "z*w"}});
  EXPECT_THROW(poon_wade_reduce(s.pair), ValidationError);
}

TEST(GeometricType, InvariantUnderClosedBTransforms) {
  std::vector<BuiltStructure> all{builtin_example("heisenberg", {{"b", "1"}, {"c", "1/2"}}), torus_almost_contact(),
                                  builtin_example("cosymplectic", {{"model", "torus"}, {"theta", "a1^a2"}, {"eta", "a3"}})};
  for (const auto& s : all) {
    SCOPED_TRACE(s.builder);
    const ModelPtr& m = s.pair.model;
    const auto& closed = m->definition().closed_two_forms;
    ASSERT_FALSE(closed.empty());
    DifferentialForm omega = m->zero_form();
    long k = 1;
    for (const auto& [name, f] : closed) omega += f.scaled(FunctionElement(m->context(), GaussianRational(k++)));
    const ContactPair moved = b_transform(s.pair, omega);
    validate(moved);
    EXPECT_EQ(types_of(moved), types_of(s.pair));
  }
}

TEST(Builders, ZeroDeformationKeepsL) {
  auto base = torus_almost_contact();
  auto d = builtin_example("deformation", {{"base", "flat"}}, {{"flat", base}});
  EXPECT_EQ(d.pair.l, base.pair.l);
  auto bent = builtin_example("deformation", {{"base", "flat"}, {"eps", "l1: 1/2*lbar1, l2: -1/2*lbar2"}},
                              {{"flat", base}});
  EXPECT_FALSE(same_span(*base.pair.model, bent.pair.l, base.pair.l));
  EXPECT_THROW(builtin_example("deformation", {{"base", "flat"}, {"eps", "l1: lbar2"}}, {{"flat", base}}),
               ValidationError);
}

TEST(Builders, ProductWithSymplecticSurface) {
  auto base = builtin_example("heisenberg", {{"b", "0"}, {"c", "0"}});
  auto p = builtin_example("product", {{"base", "h"}, {"model", "torus2"}, {"symplectic", "b1^b2"}}, {{"h", base}});
  EXPECT_EQ(p.pair.model->dim(), 5u);
  for (const auto& row : geometric_type(p.pair)) {
    EXPECT_EQ(row.p_e, 1u);
    EXPECT_EQ(row.t_l, 1u);
  }
  ASSERT_TRUE(p.spinor);
  for (const auto& x : p.pair.l) EXPECT_TRUE(annihilates(*p.pair.model, x, *p.spinor));
}

TEST(Builders, UnknownParameterIsRejected) {
  EXPECT_THROW(builtin_example("heisenberg", {{"q", "1"}}), ValidationError);
  EXPECT_THROW(builtin_example("no-such-builder", {}), UnknownSymbol);
  ASSERT_FALSE(builder_catalog().empty());
}

TEST(TripleContact, FamilyMembersSatisfyAllConditions) {
  const TripleContactFamily fam = triple_contact_family();
  ASSERT_EQ(fam.members.size(), 4u);
  for (const auto& member : fam.members) {
    SCOPED_TRACE(member.label + " by " + member.action);
    EXPECT_TRUE(member.conditions);
  }
  for (std::size_t a = 0; a < fam.members.size(); ++a) {
    for (std::size_t b = a + 1; b < fam.members.size(); ++b) EXPECT_NE(fam.members[a].phi, fam.members[b].phi);
  }
  for (const auto& row : geometric_type(fam.structure.pair)) {
    EXPECT_EQ(row.p_e, 2u);
    EXPECT_EQ(row.t_l, 3u);
  }
}

TEST(TripleContact, OppositeSignOnEta1TermIsNotATriple) {
  EXPECT_THROW(triple_contact_family(-1), ValidationError);
}

}  // namespace
}  // namespace gencontact
