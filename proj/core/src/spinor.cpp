#include "gencontact/spinor.hpp"

#include <map>

#include "gencontact/calculus.hpp"
#include "gencontact/errors.hpp"

namespace gencontact {

DifferentialForm clifford_act(const FrameModel& model, const GenSection& x, const DifferentialForm& rho) {
  DifferentialForm r = rho.lift_to(model.context());
  if (r.dim() != model.dim()) throw Error("form and section live on different frames");
  return r.interior(x.vec()) + x.one_form(model).wedge(r);
}

DifferentialForm exterior_d(const FrameModel& model, const DifferentialForm& rho, const DifferentialForm* twist) {
  DifferentialForm out = exterior_derivative(model, rho);
  if (twist != nullptr && !twist->is_zero()) out -= twist->wedge(rho);
  return out;
}

DifferentialForm mukai_pairing(const FrameModel& model, const DifferentialForm& rho1, const DifferentialForm& rho2) {
  const unsigned m = model.dim();
  DifferentialForm top = rho1.reversed().wedge(rho2).component(m);
  if ((m * (m - 1) / 2) % 2 == 1) top = -top;
  return top;
}

unsigned spinor_type_at(const DifferentialForm& rho, const Point& p) {
  auto lo = rho.evaluate(p).min_degree();
  if (!lo) throw ZeroSpinorAtPoint("form vanishes at sample point '" + p.label + "'");
  return *lo;
}

namespace {

// Matrix of x |-> x . rho over the frame generators, rows indexed by masks.
Matrix clifford_matrix(const FrameModel& model, const DifferentialForm& rho) {
  const auto gens = GenSection::generators(model);
  std::vector<DifferentialForm> images;
  std::map<Mask, std::size_t> row_of;
  for (const auto& g : gens) {
    images.push_back(clifford_act(model, g, rho));
    for (const auto& [m, u] : images.back().terms()) row_of.try_emplace(m, row_of.size());
  }
  Matrix a(std::max<std::size_t>(row_of.size(), 1), gens.size());
  for (std::size_t c = 0; c < images.size(); ++c) {
    for (const auto& [m, u] : images[c].terms()) a(row_of[m], c) = u;
  }
  return a;
}

}  // namespace

std::vector<GenSection> annihilator_basis_at(const FrameModel& model, const DifferentialForm& rho, const Point& p) {
  const DifferentialForm at = rho.evaluate(p);
  if (at.is_zero()) throw ZeroSpinorAtPoint("form vanishes at sample point '" + p.label + "'");
  std::vector<GenSection> out;
  for (const auto& v : kernel_basis(clifford_matrix(model, at))) out.push_back(GenSection::from_column(v));
  return out;
}

bool is_pure_at(const FrameModel& model, const DifferentialForm& rho, const Point& p) {
  return annihilator_basis_at(model, rho, p).size() == model.dim();
}

bool annihilates(const FrameModel& model, const GenSection& x, const DifferentialForm& rho) {
  return clifford_act(model, x, rho).is_zero();
}

std::vector<GenSection> annihilator_basis(const FrameModel& model, const DifferentialForm& rho) {
  std::vector<GenSection> out;
  for (const auto& v : kernel_basis(clifford_matrix(model, rho))) out.push_back(GenSection::from_column(v));
  return out;
}

DifferentialForm common_null_form(const FrameModel& model, const std::vector<GenSection>& sections) {
  const unsigned m = model.dim();
  const Mask words = Mask{1} << m;
  std::map<std::pair<std::size_t, Mask>, std::size_t> row_of;
  std::vector<std::vector<std::pair<std::size_t, FunctionElement>>> entries;  // per row: (col, value)
  for (std::size_t s = 0; s < sections.size(); ++s) {
    for (Mask w = 0; w < words; ++w) {
      const DifferentialForm img =
          clifford_act(model, sections[s], DifferentialForm::monomial(model.context(), m, w, model.one()));
      for (const auto& [mm, u] : img.terms()) {
        auto [it, inserted] = row_of.try_emplace({s, mm}, entries.size());
        if (inserted) entries.emplace_back();
        entries[it->second].emplace_back(static_cast<std::size_t>(w), u);
      }
    }
  }
  Matrix a(std::max<std::size_t>(entries.size(), 1), words);
  for (std::size_t r = 0; r < entries.size(); ++r) {
    for (const auto& [c, u] : entries[r]) a(r, c) = u;
  }
  auto ker = kernel_basis(a);
  DifferentialForm out = model.zero_form();
  if (ker.empty()) return out;
  for (Mask w = 0; w < words; ++w) out.add(w, ker.front()[w]);
  return out;
}

bool same_span_at(const std::vector<GenSection>& a, const std::vector<GenSection>& b, const Point& p) {
  std::vector<GenSection> both = a;
  both.insert(both.end(), b.begin(), b.end());
  const std::size_t ra = section_rank_at(a, p);
  return ra == section_rank_at(b, p) && ra == section_rank_at(both, p);
}

}  // namespace gencontact
