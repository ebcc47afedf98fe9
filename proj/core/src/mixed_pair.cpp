#include "gencontact/mixed_pair.hpp"

#include <map>
#include <stdexcept>

#include "gencontact/cone.hpp"
#include "gencontact/errors.hpp"

namespace gencontact {

std::string to_string(SpinorEquation s) {
  switch (s) {
    case SpinorEquation::Solved:
      return "solved";
    case SpinorEquation::NoSolution:
      return "no-solution";
    case SpinorEquation::NonPolynomial:
      return "non-polynomial";
  }
  return "?";
}

void validate(const MixedPair& mp) {
  if (!mp.model) throw ValidationError("mixed pair without a model");
  const FrameModel& model = *mp.model;
  if (!inner_product(mp.e1, mp.e1).is_zero()) throw ValidationError("e1 is not isotropic");
  if (!inner_product(mp.e2, mp.e2).is_zero()) throw ValidationError("e2 is not isotropic");
  if (clifford_act(model, mp.e1, mp.rho2) != mp.rho1) throw ValidationError("rho1 != e1 . rho2");
  if (clifford_act(model, mp.e2, mp.rho1) != mp.rho2) throw ValidationError("rho2 != e2 . rho1");
  const auto p1 = mp.rho1.parity(), p2 = mp.rho2.parity();
  if (!p1 || !p2) throw ValidationError("spinors of mixed parity");
  if (*p1 == *p2) throw ValidationError("spinors of equal parity");
  const DifferentialForm mu = mukai_pairing(model, mp.rho1, mp.rho2.conj());
  for (const auto& p : model.points()) {
    if (mu.evaluate(p).is_zero()) throw ValidationError("mu(rho1, conj rho2) vanishes at " + p.label);
    if (!is_pure_at(model, mp.rho1, p)) throw ValidationError("rho1 is not pure at " + p.label);
    if (!is_pure_at(model, mp.rho2, p)) throw ValidationError("rho2 is not pure at " + p.label);
  }
}

MixedPair mixed_pair_from_pair(const ContactPair& pair, const ContactTriple& triple,
                               const std::optional<DifferentialForm>& rho1) {
  const FrameModel& model = *pair.model;
  std::vector<GenSection> first = pair.l;
  first.push_back(triple.e1);
  DifferentialForm r1 = rho1 ? rho1->lift_to(model.context()) : common_null_form(model, first);
  if (r1.is_zero()) throw ValidationError("no polynomial spinor annihilated by L + C e1");
  MixedPair mp{pair.model, r1, clifford_act(model, triple.e2, r1), triple.e1, triple.e2};
  validate(mp);
  std::vector<GenSection> second = pair.l;
  second.push_back(triple.e2);
  for (const auto& p : model.points()) {
    auto at = [&](const std::vector<GenSection>& s) {
      std::vector<GenSection> out;
      for (const auto& x : s) out.push_back(x.evaluate(p));
      return out;
    };
    if (!same_span_at(annihilator_basis_at(model, mp.rho1, p), at(first), p)) {
      throw ValidationError("Ann(rho1) != L + C e1 at " + p.label);
    }
    if (!same_span_at(annihilator_basis_at(model, mp.rho2, p), at(second), p)) {
      throw ValidationError("Ann(rho2) != L + C e2 at " + p.label);
    }
  }
  return mp;
}

MixedPair mixed_pair_of(const BuiltStructure& s) {
  return mixed_pair_from_pair(s.pair, triple_from_pair(s.pair), s.spinor);
}

SpinorWitness spinor_witness(const FrameModel& model, const DifferentialForm& rho, const DifferentialForm* twist) {
  const DifferentialForm target = exterior_d(model, rho, twist);
  const auto gens = GenSection::generators(model);
  std::vector<DifferentialForm> images;
  std::map<Mask, std::size_t> row_of;
  for (const auto& [m, u] : target.terms()) row_of.try_emplace(m, row_of.size());
  for (const auto& g : gens) {
    images.push_back(clifford_act(model, g, rho));
    for (const auto& [m, u] : images.back().terms()) row_of.try_emplace(m, row_of.size());
  }
  SpinorWitness out;
  if (row_of.empty()) {
    out.status = SpinorEquation::Solved;
    out.v = GenSection(model);
    return out;
  }
  Matrix a(row_of.size(), gens.size());
  Column b(row_of.size());
  for (std::size_t c = 0; c < images.size(); ++c) {
    for (const auto& [m, u] : images[c].terms()) a(row_of[m], c) = u;
  }
  for (const auto& [m, u] : target.terms()) b[row_of[m]] = u;
  auto res = solve_linear(a, b);
  if (std::holds_alternative<Inconsistency>(res)) return out;
  Column coeffs;
  for (const auto& f : std::get<LinearSolution>(res).values) {
    auto v = f.as_element();
    if (!v) {
      out.status = SpinorEquation::NonPolynomial;
      return out;
    }
    coeffs.push_back(v->lift_to(model.context()));
  }
  out.status = SpinorEquation::Solved;
  out.v = GenSection::from_column(coeffs);
  return out;
}

MixedIntegrability mixed_pair_integrability(const MixedPair& mp, const DifferentialForm* twist) {
  MixedIntegrability out;
  out.first = spinor_witness(*mp.model, mp.rho1, twist);
  out.second = spinor_witness(*mp.model, mp.rho2, twist);
  const bool s1 = out.first.status == SpinorEquation::Solved;
  const bool s2 = out.second.status == SpinorEquation::Solved;
  out.integrable = s1 || s2;
  out.strong = s1 && s2;
  return out;
}

DifferentialForm cone_spinor(const MixedPair& mp) {
  const ModelPtr cone = cone_model(mp.model);
  const unsigned m = mp.model->dim();
  const DifferentialForm dt = DifferentialForm::coframe(cone->context(), m + 1, m);
  return mp.rho1.embedded(m + 1) + dt.wedge(mp.rho2.embedded(m + 1)).scaled(FunctionElement(GaussianRational::i()));
}

std::vector<TypeSumRow> type_sum_check(const MixedPair& mp, const ContactPair& pair) {
  const unsigned m = mp.model->dim();
  std::vector<TypeSumRow> out;
  for (const auto& p : mp.model->points()) {
    TypeSumRow row{p.label, m - static_cast<unsigned>(anchor_rank_at(pair.l, p)), spinor_type_at(mp.rho1, p),
                   spinor_type_at(mp.rho2, p)};
    if (2 * row.t_l != row.type1 + row.type2 + 1) throw std::logic_error("2 t_L != type1 + type2 + 1 at " + p.label);
    out.push_back(std::move(row));
  }
  return out;
}

std::vector<CircleTypeRow> circle_type_check(const MixedPair& mp, const ContactPair& pair) {
  const unsigned m = mp.model->dim();
  const DifferentialForm rho = cone_spinor(mp);
  std::vector<CircleTypeRow> out;
  for (const auto& p : mp.model->points()) {
    CircleTypeRow row{p.label, m - static_cast<unsigned>(anchor_rank_at(pair.l, p)), spinor_type_at(rho, p),
                      spinor_type_at(mp.rho1, p), spinor_type_at(mp.rho2, p)};
    if (row.t_j > row.t_l || row.t_l - row.t_j > 1) throw std::logic_error("t_L - t_J out of [0, 1] at " + p.label);
    if (row.t_j != row.type1) throw std::logic_error("cone spinor type != type(rho1) at " + p.label);
    if ((row.t_l == row.t_j) != (row.type1 == row.type2 + 1)) {
      throw std::logic_error("t_L = t_J criterion fails at " + p.label);
    }
    out.push_back(std::move(row));
  }
  return out;
}

}  // namespace gencontact
