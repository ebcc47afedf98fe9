#include "gencontact/integrability.hpp"

#include <algorithm>
#include <map>

#include "gencontact/calculus.hpp"
#include "gencontact/errors.hpp"

namespace gencontact {

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Pass:
      return "PASS";
    case Verdict::Fail:
      return "FAIL";
    case Verdict::Inconclusive:
      return "INCONCLUSIVE";
  }
  return "?";
}

namespace {

struct Labelled {
  std::string label;
  GenSection x;
};

std::vector<Labelled> complement_frame(const FrameModel& model, const GenSection& e1, const GenSection& e2) {
  std::vector<Labelled> out;
  const auto gens = GenSection::generators(model);
  for (std::size_t k = 0; k < gens.size(); ++k) {
    GenSection x = project_off(gens[k], e1, e2);
    if (x.is_zero()) continue;
    if (std::any_of(out.begin(), out.end(), [&](const Labelled& l) { return l.x == x; })) continue;
    const std::string name = k < model.dim() ? model.vector_names()[k] : model.coframe_names()[k - model.dim()];
    out.push_back({"perp(" + name + ")", std::move(x)});
  }
  return out;
}

unsigned degree_of(const Monomial& m) {
  unsigned d = 0;
  for (auto e : m) d += e;
  return d;
}

// Real polynomial as a sparse rational vector over monomials.
using Sparse = std::map<Monomial, mpq_class>;

Sparse to_sparse(const FunctionElement& u) {
  Sparse out;
  for (const auto& [m, c] : u.terms()) {
    if (sgn(c.real()) != 0) out.emplace(m, c.real());
  }
  return out;
}

FunctionElement from_sparse(const ContextPtr& ctx, const Sparse& v) {
  Terms t;
  for (const auto& [m, c] : v) add_term(t, m, GaussianRational(c));
  return FunctionElement(ctx, std::move(t));
}

// Incremental echelon basis for Q-span membership.
class SpanBasis {
 public:
  // Returns true when v was independent (and adds it).
  bool insert(Sparse v) {
    reduce(v);
    if (v.empty()) return false;
    const Monomial pivot = v.begin()->first;
    const mpq_class inv = 1 / v.begin()->second;
    for (auto& [m, c] : v) c *= inv;
    rows_.emplace(pivot, std::move(v));
    return true;
  }
  bool contains(Sparse v) const {
    reduce(v);
    return v.empty();
  }

 private:
  void reduce(Sparse& v) const {
    for (auto it = v.begin(); it != v.end();) {
      auto row = rows_.find(it->first);
      if (row == rows_.end()) {
        ++it;
        continue;
      }
      const mpq_class f = it->second;
      const Monomial key = it->first;
      for (const auto& [m, c] : row->second) {
        mpq_class& slot = v[m];
        slot -= f * c;
      }
      for (auto jt = v.begin(); jt != v.end();) jt = sgn(jt->second) == 0 ? v.erase(jt) : std::next(jt);
      it = v.upper_bound(key);
    }
  }

  std::map<Monomial, Sparse> rows_;
};

std::vector<FunctionElement> multiplier_monomials(const ContextPtr& ctx) {
  std::vector<FunctionElement> gens;
  for (std::size_t g = 0; g < ctx->generator_count(); ++g) gens.push_back(FunctionElement::generator(ctx, g));
  std::vector<FunctionElement> out{FunctionElement(ctx, 1)};
  for (std::size_t a = 0; a < gens.size(); ++a) {
    out.push_back(gens[a]);
    for (std::size_t b = a; b < gens.size(); ++b) out.push_back(gens[a] * gens[b]);
  }
  return out;
}

}  // namespace

std::vector<FunctionElement> canonical_certificates(const std::vector<FunctionElement>& scalars) {
  std::vector<FunctionElement> parts;
  ContextPtr ctx;
  for (const auto& s : scalars) {
    for (const auto& p : {s.real_part(), s.imag_part()}) {
      if (p.is_zero()) continue;
      if (!ctx) ctx = p.context();
      parts.push_back(p.monic());
    }
  }
  if (parts.empty()) return {};
  std::sort(parts.begin(), parts.end(), [](const FunctionElement& a, const FunctionElement& b) {
    if (a.term_count() != b.term_count()) return a.term_count() < b.term_count();
    if (a.degree() != b.degree()) return a.degree() < b.degree();
    return a.to_string() < b.to_string();
  });

  const auto multipliers = multiplier_monomials(ctx);
  SpanBasis module;
  std::vector<FunctionElement> kept;
  for (const auto& p : parts) {
    if (module.contains(to_sparse(p))) continue;
    kept.push_back(p);
    for (const auto& mono : multipliers) module.insert(to_sparse(mono * p));
  }

  // Row reduction with pivots on the lowest degree, highest priority monomial.
  auto pivot_before = [&](const Monomial& a, const Monomial& b) {
    const unsigned da = degree_of(a), db = degree_of(b);
    if (da != db) return da < db;
    return ctx->monomial_less(b, a);
  };
  std::vector<Sparse> rows;
  std::vector<Monomial> pivots;
  for (const auto& k : kept) {
    Sparse v = to_sparse(k);
    for (std::size_t r = 0; r < rows.size(); ++r) {
      auto it = v.find(pivots[r]);
      if (it == v.end()) continue;
      const mpq_class f = it->second;
      for (const auto& [m, c] : rows[r]) v[m] -= f * c;
      for (auto jt = v.begin(); jt != v.end();) jt = sgn(jt->second) == 0 ? v.erase(jt) : std::next(jt);
    }
    if (v.empty()) continue;
    Monomial piv = v.begin()->first;
    for (const auto& [m, c] : v) {
      if (pivot_before(m, piv)) piv = m;
    }
    const mpq_class inv = 1 / v[piv];
    for (auto& [m, c] : v) c *= inv;
    for (std::size_t r = 0; r < rows.size(); ++r) {
      auto it = rows[r].find(piv);
      if (it == rows[r].end()) continue;
      const mpq_class f = it->second;
      for (const auto& [m, c] : v) rows[r][m] -= f * c;
      for (auto jt = rows[r].begin(); jt != rows[r].end();) jt = sgn(jt->second) == 0 ? rows[r].erase(jt) : std::next(jt);
    }
    rows.push_back(std::move(v));
    pivots.push_back(piv);
  }
  std::vector<std::size_t> order(rows.size());
  for (std::size_t r = 0; r < order.size(); ++r) order[r] = r;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return pivot_before(pivots[a], pivots[b]); });
  std::vector<FunctionElement> out;
  for (auto r : order) out.push_back(from_sparse(ctx, rows[r]));
  return out;
}

NormalityReport normality_check(const ContactTriple& t, const DifferentialForm* twist) {
  const FrameModel& model = *t.model;
  auto br = [&](const GenSection& x, const GenSection& y) { return dorfman(model, x, y, twist); };
  auto phi = [&](const GenSection& x) { return apply(t.phi, x); };
  NormalityReport out;
  auto fail = [&](std::string condition, std::string argument, GenSection value) {
    out.normal = false;
    out.failures.push_back({std::move(condition), std::move(argument), std::move(value)});
  };

  const GenSection e12 = br(t.e1, t.e2);
  if (!e12.is_zero()) {
    for (const auto& c : e12.as_column()) {
      if (!c.is_zero()) out.frame_bracket_coefficients.push_back(c);
    }
    fail("frame-bracket", "e1, e2", e12);
  }
  const auto frame = complement_frame(model, t.e1, t.e2);
  const std::array<std::pair<const char*, const GenSection*>, 2> es{{{"e1", &t.e1}, {"e2", &t.e2}}};
  for (const auto& x : frame) {
    for (const auto& [name, e] : es) {
      GenSection r = phi(br(x.x, *e)) - br(phi(x.x), *e);
      if (!r.is_zero()) fail("e-invariance", x.label + ", " + name, std::move(r));
    }
  }
  for (std::size_t j = 0; j < frame.size(); ++j) {
    const GenSection px = phi(frame[j].x);
    for (std::size_t k = j + 1; k < frame.size(); ++k) {
      const GenSection& x = frame[j].x;
      const GenSection& y = frame[k].x;
      const GenSection py = phi(y);
      GenSection n = br(px, py) - br(x, y) - phi(br(px, y) + br(x, py));
      if (!n.is_zero()) fail("nijenhuis", frame[j].label + ", " + frame[k].label, std::move(n));
    }
  }
  return out;
}

IntegrabilityReport integrability_check(const ContactPair& pair, const DifferentialForm* twist,
                                        const std::vector<GenSection>& extra_lines) {
  const FrameModel& model = *pair.model;
  const auto [e1, e2] = normalized_frame(pair);
  std::vector<std::pair<std::string, GenSection>> lines{{"e1", e1}, {"e2", e2}};
  for (std::size_t k = 0; k < extra_lines.size(); ++k) {
    const GenSection& l = extra_lines[k];
    if (!inner_product(l, l).is_zero()) throw ValidationError("extra line " + std::to_string(k + 1) + " is not isotropic");
    if (section_rank({e1, e2, l}) != 2) throw ValidationError("extra line " + std::to_string(k + 1) + " is not in E");
    lines.emplace_back("extra" + std::to_string(k + 1), l);
  }
  IntegrabilityReport out;
  out.strong = true;
  std::vector<FunctionElement> all;
  for (const auto& [name, line] : lines) {
    std::vector<GenSection> g = pair.l;
    g.push_back(line);
    LineResult r{name, true, {}};
    for (std::size_t a = 0; a < g.size(); ++a) {
      for (std::size_t b = a + 1; b < g.size(); ++b) {
        const GenSection br = dorfman(model, g[a], g[b], twist);
        for (std::size_t c = 0; c < g.size(); ++c) {
          if (c == a || c == b) continue;
          FunctionElement s = inner_product(br, g[c]);
          if (!s.is_zero()) r.obstructions.push_back(std::move(s));
        }
      }
    }
    r.involutive = r.obstructions.empty();
    out.integrable = out.integrable || r.involutive;
    out.strong = out.strong && r.involutive;
    all.insert(all.end(), r.obstructions.begin(), r.obstructions.end());
    out.lines.push_back(std::move(r));
  }
  out.certificates = canonical_certificates(all);
  return out;
}

NormalFrameReport normal_frame_criterion(const ContactPair& pair, const DifferentialForm* twist) {
  const FrameModel& model = *pair.model;
  const unsigned m = model.dim();
  NormalFrameReport out;
  const IntegrabilityReport integ = integrability_check(pair, twist);
  if (!integ.strong) {
    out.verdict = Verdict::Fail;
    out.detail = "not strongly integrable";
    return out;
  }
  const auto [e1, e2] = normalized_frame(pair);
  const GenSection target = dorfman(model, e1, e2, twist);
  std::vector<Column> cols;
  for (unsigned a = 0; a < m; ++a) cols.push_back(project_off(GenSection::basis_form(model, a), e1, e2).as_column());
  const Matrix proj = Matrix::from_columns(cols, 2 * m);
  auto res = solve_linear(proj, target.as_column());
  if (std::holds_alternative<Inconsistency>(res)) {
    out.verdict = Verdict::Fail;
    out.detail = "[e1, e2] is not the projection of a 1-form";
    return out;
  }
  Column theta;
  for (const auto& f : std::get<LinearSolution>(res).values) {
    auto v = f.as_element();
    if (!v) {
      out.detail = "projected 1-form is not polynomial";
      return out;
    }
    theta.push_back(*v);
  }
  const auto kernel = kernel_basis(proj);

  // Unknown constants: coefficients of monomials of degree 1..2 in the
  // differentiable generators, and multiples of the 1-forms in E.
  const ContextPtr& ctx = model.context();
  std::vector<FunctionElement> gens;
  for (std::size_t g = 0; g < ctx->generator_count(); ++g) {
    const auto kind = ctx->generator(g).kind;
    if (kind == GeneratorKind::Derivative || kind == GeneratorKind::Algebraic) continue;
    gens.push_back(FunctionElement::generator(ctx, g));
  }
  std::vector<FunctionElement> monos;
  for (std::size_t a = 0; a < gens.size(); ++a) {
    monos.push_back(gens[a]);
    for (std::size_t b = a; b < gens.size(); ++b) monos.push_back(gens[a] * gens[b]);
  }
  std::vector<Column> unknowns;
  std::vector<FunctionElement> kept_monos;
  for (const auto& u : monos) {
    try {
      Column c = differential(model, u).one_form_coefficients();
      if (std::all_of(c.begin(), c.end(), [](const FunctionElement& x) { return x.is_zero(); })) continue;
      unknowns.push_back(std::move(c));
      kept_monos.push_back(u);
    } catch (const SecondOrderDerivativeRequired&) {
    }
  }
  for (const auto& k : kernel) unknowns.push_back(Column(k.begin(), k.begin() + m));
  // Coefficient matching over (component, monomial).
  std::map<std::pair<std::size_t, Monomial>, std::size_t> row_of;
  auto row = [&](std::size_t comp, const Monomial& mono) {
    auto key = std::make_pair(comp, mono);
    auto it = row_of.find(key);
    if (it != row_of.end()) return it->second;
    const std::size_t r = row_of.size();
    row_of.emplace(key, r);
    return r;
  };
  std::vector<std::vector<std::pair<std::size_t, GaussianRational>>> entries(unknowns.size());
  for (std::size_t j = 0; j < unknowns.size(); ++j) {
    for (std::size_t a = 0; a < m; ++a) {
      for (const auto& [mono, c] : unknowns[j][a].terms()) entries[j].emplace_back(row(a, mono), c);
    }
  }
  std::vector<std::pair<std::size_t, GaussianRational>> rhs_entries;
  for (std::size_t a = 0; a < m; ++a) {
    for (const auto& [mono, c] : theta[a].terms()) rhs_entries.emplace_back(row(a, mono), c);
  }
  bool found = false;
  if (!row_of.empty() && !unknowns.empty()) {
    Matrix sys(row_of.size(), unknowns.size());
    for (std::size_t r = 0; r < sys.rows(); ++r) {
      for (std::size_t c = 0; c < sys.cols(); ++c) sys(r, c) = FunctionElement(GaussianRational(0));
    }
    for (std::size_t j = 0; j < entries.size(); ++j) {
      for (const auto& [r, c] : entries[j]) sys(r, j) += FunctionElement(c);
    }
    Column rhs(row_of.size(), FunctionElement(GaussianRational(0)));
    for (const auto& [r, c] : rhs_entries) rhs[r] += FunctionElement(c);
    auto sol = solve_linear(sys, rhs);
    if (auto* s = std::get_if<LinearSolution>(&sol)) {
      FunctionElement u(ctx, 0);
      for (std::size_t j = 0; j < kept_monos.size(); ++j) {
        const auto& f = s->values[j];
        if (f.numerator.is_zero()) continue;
        u += kept_monos[j] * FunctionElement(ctx, (f.numerator.constant_value() / f.denominator.constant_value()));
      }
      out.potential = u.real_part();
      found = true;
    }
  } else if (row_of.empty()) {
    out.potential = FunctionElement(ctx, GaussianRational(0));
    found = true;
  }
  if (found) {
    out.verdict = Verdict::Pass;
    out.detail = "potential u = " + out.potential->to_string();
    return out;
  }
  if (kernel.empty()) {
    try {
      DifferentialForm th = GenSection(model.zero_column(), theta).one_form(model);
      if (!exterior_derivative(model, th).is_zero()) {
        out.verdict = Verdict::Fail;
        out.detail = "the unique projected 1-form is not closed";
        return out;
      }
    } catch (const SecondOrderDerivativeRequired&) {
    }
  }
  out.verdict = Verdict::Inconclusive;
  out.detail = "no potential of degree <= 2 found";
  return out;
}

}  // namespace gencontact
