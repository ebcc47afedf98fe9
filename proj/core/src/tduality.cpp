#include "gencontact/tduality.hpp"

#include <algorithm>
#include <cstdlib>
#include <functional>
#include <map>
#include <optional>
#include <stdexcept>

#include "gencontact/builtins.hpp"
#include "gencontact/calculus.hpp"
#include "gencontact/cone.hpp"
#include "gencontact/errors.hpp"
#include "gencontact/expression.hpp"
#include "gencontact/model_loader.hpp"

namespace gencontact {

namespace {

int permutation_sign(const std::vector<std::size_t>& seq) {
  int inversions = 0;
  for (std::size_t a = 0; a < seq.size(); ++a) {
    for (std::size_t b = a + 1; b < seq.size(); ++b) inversions += seq[a] > seq[b] ? 1 : 0;
  }
  return inversions % 2 == 0 ? 1 : -1;
}

std::vector<std::size_t> bits_of(Mask m) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; m != 0; ++i, m >>= 1) {
    if ((m & 1U) != 0) out.push_back(i);
  }
  return out;
}

std::size_t index_of(const std::vector<std::string>& names, const std::string& n, const char* what) {
  auto it = std::find(names.begin(), names.end(), n);
  if (it == names.end()) throw ValidationError(std::string("unknown ") + what + " '" + n + "'");
  return static_cast<std::size_t>(it - names.begin());
}

// Frame bookkeeping shared by every transform.
struct Layout {
  unsigned m = 0;
  unsigned k = 0;
  std::vector<std::size_t> src_fiber, tgt_fiber;
  std::vector<std::optional<std::size_t>> s2t, t2s;  // basic indices
  std::vector<std::vector<GaussianRational>> f, f_inv;

  Mask source_fiber_mask() const {
    Mask out = 0;
    for (auto a : src_fiber) out |= Mask{1} << a;
    return out;
  }
  // Correspondence index of a target coframe index.
  std::size_t corr_of_target(std::size_t t) const {
    for (unsigned b = 0; b < k; ++b) {
      if (tgt_fiber[b] == t) return m + b;
    }
    return *t2s[t];
  }
  std::size_t target_of_corr(std::size_t c) const { return c >= m ? tgt_fiber[c - m] : *s2t[c]; }
};

std::vector<std::vector<GaussianRational>> invert(std::vector<std::vector<GaussianRational>> a) {
  const std::size_t n = a.size();
  std::vector<std::vector<GaussianRational>> inv(n, std::vector<GaussianRational>(n));
  for (std::size_t i = 0; i < n; ++i) inv[i][i] = GaussianRational(1);
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    while (piv < n && a[piv][c].is_zero()) ++piv;
    if (piv == n) throw ValidationError("the fiber pairing is degenerate");
    std::swap(a[c], a[piv]);
    std::swap(inv[c], inv[piv]);
    const GaussianRational s = GaussianRational(1) / a[c][c];
    for (std::size_t j = 0; j < n; ++j) {
      a[c][j] *= s;
      inv[c][j] *= s;
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c || a[r][c].is_zero()) continue;
      const GaussianRational t = a[r][c];
      for (std::size_t j = 0; j < n; ++j) {
        a[r][j] -= t * a[c][j];
        inv[r][j] -= t * inv[c][j];
      }
    }
  }
  return inv;
}

Layout layout_of(const TDualPair& d) {
  if (!d.source || !d.target) throw ValidationError("dual pair without models");
  Layout l;
  l.m = d.source->dim();
  l.k = static_cast<unsigned>(d.source_fiber.size());
  if (d.target->dim() != l.m) throw ValidationError("source and target have different dimensions");
  if (d.target_fiber.size() != l.k || l.k == 0) throw ValidationError("fiber lists differ in length or are empty");
  for (const auto& n : d.source_fiber) l.src_fiber.push_back(index_of(d.source->vector_names(), n, "source fiber"));
  for (const auto& n : d.target_fiber) l.tgt_fiber.push_back(index_of(d.target->vector_names(), n, "target fiber"));
  l.s2t.assign(l.m, std::nullopt);
  l.t2s.assign(l.m, std::nullopt);
  for (std::size_t i = 0; i < l.m; ++i) {
    if (std::find(l.src_fiber.begin(), l.src_fiber.end(), i) != l.src_fiber.end()) continue;
    const std::size_t t = index_of(d.target->vector_names(), d.source->vector_names()[i], "basic vector");
    if (std::find(l.tgt_fiber.begin(), l.tgt_fiber.end(), t) != l.tgt_fiber.end()) {
      throw ValidationError("basic vector '" + d.source->vector_names()[i] + "' is a target fiber");
    }
    if (d.source->coframe_names()[i] != d.target->coframe_names()[t]) {
      throw ValidationError("basic coframe names differ: " + d.source->coframe_names()[i] + " / " +
                            d.target->coframe_names()[t]);
    }
    l.s2t[i] = t;
    l.t2s[t] = i;
  }
  if (d.pairing.size() != l.k) throw ValidationError("pairing matrix has the wrong size");
  for (const auto& row : d.pairing) {
    if (row.size() != l.k) throw ValidationError("pairing matrix has the wrong size");
  }
  l.f = d.pairing;
  l.f_inv = invert(d.pairing);
  return l;
}

FunctionElement transport(const FunctionElement& u, const ContextPtr& to) {
  if (!u.context()) return FunctionElement(to, u.is_zero() ? GaussianRational(0) : u.constant_value());
  if (u.context() == to) return u;
  const ContextPtr& from = u.context();
  Terms out;
  for (const auto& [mono, c] : u.terms()) {
    Monomial tm = to->unit_monomial();
    for (std::size_t g = 0; g < mono.size(); ++g) {
      if (mono[g] == 0) continue;
      auto idx = to->find_generator(from->generator(g).name);
      if (!idx) throw ValidationError("coefficient uses '" + from->generator(g).name + "', unknown on the target");
      tm[*idx] = mono[g];
    }
    add_term(out, tm, c);
  }
  return FunctionElement(to, std::move(out));
}

DifferentialForm transport(const DifferentialForm& rho, const ContextPtr& to) {
  DifferentialForm out(to, rho.dim());
  for (const auto& [mask, u] : rho.terms()) out.add(mask, transport(u, to));
  return out;
}

// Re-indexes a form through `map` (old index -> new index) into `dim`.
DifferentialForm reindex(const DifferentialForm& rho, const std::function<std::size_t(std::size_t)>& map,
                         unsigned dim) {
  DifferentialForm out(rho.context(), dim);
  for (const auto& [mask, u] : rho.terms()) {
    std::vector<std::size_t> seq;
    Mask nm = 0;
    for (auto b : bits_of(mask)) {
      seq.push_back(map(b));
      nm |= Mask{1} << seq.back();
    }
    out.add(nm, permutation_sign(seq) > 0 ? u : -u);
  }
  return out;
}

DifferentialForm pairing_form(const Layout& l, const ContextPtr& ctx) {
  const unsigned n = l.m + l.k;
  DifferentialForm f(ctx, n);
  for (unsigned a = 0; a < l.k; ++a) {
    for (unsigned b = 0; b < l.k; ++b) {
      if (l.f[a][b].is_zero()) continue;
      f += DifferentialForm::coframe(ctx, n, l.src_fiber[a])
               .wedge(DifferentialForm::coframe(ctx, n, l.m + b))
               .scaled(FunctionElement(ctx, l.f[a][b]));
    }
  }
  return f;
}

// Coefficient of the source fiber volume, moved to the right, as a target form.
DifferentialForm integrate(const Layout& l, const DifferentialForm& corr, const ContextPtr& ctx) {
  const Mask fiber = l.source_fiber_mask();
  DifferentialForm out(ctx, l.m);
  for (const auto& [mask, u] : corr.terms()) {
    if ((mask & fiber) != fiber) continue;
    std::vector<std::size_t> seq;
    for (auto b : bits_of(mask & ~fiber)) seq.push_back(b);
    for (auto a : l.src_fiber) seq.push_back(a);
    int sign = permutation_sign(seq);
    std::vector<std::size_t> rest;
    Mask nm = 0;
    for (auto b : bits_of(mask & ~fiber)) {
      rest.push_back(l.target_of_corr(b));
      nm |= Mask{1} << rest.back();
    }
    sign *= permutation_sign(rest);
    out.add(nm, sign > 0 ? u : -u);
  }
  return out;
}

GenSection target_generator_section(const FrameModel& model, std::size_t k) {
  return GenSection::generators(model)[k];
}

}  // namespace

DifferentialForm correspondence_pairing(const TDualPair& d) { return pairing_form(layout_of(d), d.target->context()); }

void validate(const TDualPair& d) {
  const Layout l = layout_of(d);
  const ContextPtr& ctx = d.target->context();
  const unsigned n = l.m + l.k;
  DifferentialForm df(ctx, n);
  for (unsigned a = 0; a < l.k; ++a) {
    const DifferentialForm dnu = transport(
        exterior_derivative(*d.source, DifferentialForm::coframe(d.source->context(), l.m, l.src_fiber[a])), ctx);
    for (unsigned b = 0; b < l.k; ++b) {
      if (l.f[a][b].is_zero()) continue;
      const DifferentialForm dnut =
          reindex(exterior_derivative(*d.target, DifferentialForm::coframe(ctx, l.m, l.tgt_fiber[b])),
                  [&](std::size_t t) { return l.corr_of_target(t); }, n);
      const FunctionElement c(ctx, l.f[a][b]);
      df += dnu.embedded(n).wedge(DifferentialForm::coframe(ctx, n, l.m + b)).scaled(c);
      df -= DifferentialForm::coframe(ctx, n, l.src_fiber[a]).wedge(dnut).scaled(c);
    }
  }
  DifferentialForm h(ctx, n);
  if (!d.target_twist.is_zero()) {
    h += reindex(transport(d.target_twist, ctx), [&](std::size_t t) { return l.corr_of_target(t); }, n);
  }
  if (!d.source_twist.is_zero()) h -= transport(d.source_twist, ctx).embedded(n);
  if (df != h) throw ValidationError("dF != p~* H~ - p* H for the pair '" + d.name + "'");
}

TDualPair dual_pair_from_section(const Section& s, const ModelResolver& models) {
  const ModelResolver resolve = models ? models : ModelResolver(builtin_model);
  TDualPair d;
  d.name = s.name;
  d.source = resolve(trim(s.require("source").value));
  d.target = resolve(trim(s.require("target").value));
  for (const Entry* e : s.all("fiber")) {
    if (e->key.size() != 2) throw ParseError("expected 'fiber SOURCE = TARGET'", e->line);
    d.source_fiber.push_back(e->key[1]);
    d.target_fiber.push_back(trim(e->value));
  }
  const std::size_t k = d.source_fiber.size();
  d.pairing.assign(k, std::vector<GaussianRational>(k));
  for (const Entry* e : s.all("pairing")) {
    if (e->key.size() != 3) throw ParseError("expected 'pairing SOURCE TARGET = VALUE'", e->line);
    auto a = std::find(d.source_fiber.begin(), d.source_fiber.end(), e->key[1]);
    auto b = std::find(d.target_fiber.begin(), d.target_fiber.end(), e->key[2]);
    if (a == d.source_fiber.end() || b == d.target_fiber.end()) throw ParseError("pairing names a non-fiber", e->line);
    d.pairing[a - d.source_fiber.begin()][b - d.target_fiber.begin()] = GaussianRational::parse_rational(trim(e->value));
  }
  const std::string h = s.get("source_twist", "0");
  const std::string ht = s.get("target_twist", "0");
  d.source_twist = parse_form(h, Scope(d.source));
  d.target_twist = parse_form(ht, Scope(d.target));
  validate(d);
  return d;
}

TDualPair builtin_dual_pair(const std::string& name) { return dual_pair_from_section(builtin_section("dual", name)); }

std::vector<std::string> builtin_dual_pairs() {
  std::vector<std::string> out;
  for (const Section* s : builtin_sections("dual")) out.push_back(s->name);
  return out;
}

TDualPair inverse_pair(const TDualPair& d) {
  TDualPair out;
  out.name = d.name + "-inverse";
  out.source = d.target;
  out.target = d.source;
  out.source_fiber = d.target_fiber;
  out.target_fiber = d.source_fiber;
  const std::size_t k = d.pairing.size();
  out.pairing.assign(k, std::vector<GaussianRational>(k));
  for (std::size_t a = 0; a < k; ++a) {
    for (std::size_t b = 0; b < k; ++b) out.pairing[b][a] = d.pairing[a][b];
  }
  out.source_twist = d.target_twist;
  out.target_twist = d.source_twist;
  validate(out);
  return out;
}

TDualPair trivial_circle_pair(const ModelPtr& base) {
  TDualPair d;
  d.name = "trivial-circle";
  d.source = extend_by_line(base, "-circle", "Dt", "dt");
  d.target = extend_by_line(base, "-circle~", "Dt~", "dt~");
  d.source_fiber = {"Dt"};
  d.target_fiber = {"Dt~"};
  d.pairing = {{GaussianRational(-1)}};
  d.source_twist = DifferentialForm(d.source->context(), d.source->dim());
  d.target_twist = DifferentialForm(d.target->context(), d.target->dim());
  validate(d);
  return d;
}

bool is_invariant(const TDualPair& d, const FunctionElement& u) {
  if (u.is_zero() || u.is_constant()) return true;
  for (const auto& v : d.source_fiber) {
    const auto& derivation = d.source->derivation_name(*d.source->vector_index(v));
    if (derivation && !u.derive(*derivation).is_zero()) return false;
  }
  return true;
}

bool is_invariant(const TDualPair& d, const GenSection& x) {
  for (const auto& u : x.as_column()) {
    if (!is_invariant(d, u)) return false;
  }
  return true;
}

bool is_invariant(const TDualPair& d, const DifferentialForm& rho) {
  for (const auto& [mask, u] : rho.terms()) {
    if (!is_invariant(d, u)) return false;
  }
  return true;
}

Point transport_point(const TDualPair& d, const Point& p) {
  const ContextPtr& from = d.source->context();
  const ContextPtr& to = d.target->context();
  Point out{p.label, std::vector<std::optional<GaussianRational>>(to->generator_count())};
  for (std::size_t g = 0; g < p.values.size(); ++g) {
    if (!p.values[g]) continue;
    if (auto idx = to->find_generator(from->generator(g).name)) out.values[*idx] = p.values[g];
  }
  return out;
}

GenSection phi_f(const TDualPair& d, const GenSection& x) {
  if (!is_invariant(d, x)) throw ValidationError("section is not invariant along the fiber");
  const Layout l = layout_of(d);
  const ContextPtr& ctx = d.target->context();
  GenSection out(*d.target);
  for (std::size_t i = 0; i < l.m; ++i) {
    if (!l.s2t[i]) continue;
    out.vec()[*l.s2t[i]] += transport(x.vec()[i], ctx);
    out.form()[*l.s2t[i]] += transport(x.form()[i], ctx);
  }
  for (unsigned b = 0; b < l.k; ++b) {
    FunctionElement y(ctx, GaussianRational(0)), eta(ctx, GaussianRational(0));
    for (unsigned a = 0; a < l.k; ++a) {
      y -= transport(x.form()[l.src_fiber[a]], ctx).scaled(l.f_inv[b][a]);
      eta -= transport(x.vec()[l.src_fiber[a]], ctx).scaled(l.f[a][b]);
    }
    out.vec()[l.tgt_fiber[b]] += y;
    out.form()[l.tgt_fiber[b]] += eta;
  }
  return out;
}

DifferentialForm tau_f(const TDualPair& d, const DifferentialForm& rho) {
  if (!is_invariant(d, rho)) throw ValidationError("form is not invariant along the fiber");
  const Layout l = layout_of(d);
  const ContextPtr& ctx = d.target->context();
  const unsigned n = l.m + l.k;
  const DifferentialForm corr = pairing_form(l, ctx).exp().wedge(transport(rho, ctx).embedded(n));
  return integrate(l, corr, ctx);
}

Matrix phi_f_matrix(const TDualPair& d) {
  std::vector<Column> cols;
  for (const auto& g : GenSection::generators(*d.source)) cols.push_back(phi_f(d, g).as_column());
  return Matrix::from_columns(cols, 2 * d.target->dim());
}

ContactPair dualize(const TDualPair& d, const ContactPair& pair) {
  ContactPair out{d.target, {phi_f(d, pair.e[0]), phi_f(d, pair.e[1])}, {}};
  for (const auto& x : pair.l) out.l.push_back(phi_f(d, x));
  validate(out);
  return out;
}

ContactTriple dualize(const TDualPair& d, const ContactTriple& triple) {
  const FrameModel& target = *d.target;
  const Matrix p = phi_f_matrix(d);
  const std::size_t n = 2 * target.dim();
  std::vector<Column> cols;
  for (std::size_t c = 0; c < n; ++c) {
    auto res = solve_linear(p, target_generator_section(target, c).as_column());
    if (std::holds_alternative<Inconsistency>(res)) throw std::logic_error("phi_F is not invertible");
    Column pre;
    for (const auto& f : std::get<LinearSolution>(res).values) pre.push_back(*f.as_element());
    // pre is the source preimage written in target scalars; apply Phi there.
    Column phi_pre(n, FunctionElement(target.context(), GaussianRational(0)));
    for (std::size_t r = 0; r < n; ++r) {
      for (std::size_t j = 0; j < n; ++j) {
        if (pre[j].is_zero()) continue;
        phi_pre[r] += transport(triple.phi(r, j), target.context()) * pre[j];
      }
    }
    cols.push_back(p.apply(phi_pre));
  }
  ContactTriple out{d.target, Matrix::from_columns(cols, n), phi_f(d, triple.e1), phi_f(d, triple.e2)};
  validate(out);
  return out;
}

MixedPair dualize(const TDualPair& d, const MixedPair& mp) {
  MixedPair out{d.target, tau_f(d, mp.rho1), tau_f(d, mp.rho2), phi_f(d, mp.e1), phi_f(d, mp.e2)};
  validate(out);
  return out;
}

IntertwinerReport intertwiner_check(const TDualPair& d, const std::vector<DifferentialForm>& forms) {
  const FrameModel& src = *d.source;
  const FrameModel& tgt = *d.target;
  const Layout l = layout_of(d);
  const ContextPtr& ctx = tgt.context();
  const DifferentialForm* h = d.source_twist.is_zero() ? nullptr : &d.source_twist;
  const DifferentialForm* ht = d.target_twist.is_zero() ? nullptr : &d.target_twist;
  IntertwinerReport out;
  const auto gens = GenSection::generators(src);
  std::vector<GenSection> images;
  for (const auto& g : gens) images.push_back(phi_f(d, g));
  auto lie_invariant = [&](const GenSection& x) {
    for (auto a : l.src_fiber) {
      if (!dorfman(src, GenSection::basis_vector(src, a), x, h).is_zero()) return false;
    }
    return true;
  };
  for (std::size_t a = 0; a < gens.size(); ++a) {
    for (std::size_t b = 0; b < gens.size(); ++b) {
      if (inner_product(images[a], images[b]) != transport(inner_product(gens[a], gens[b]), ctx)) {
        ++out.pairing_failures;
        out.messages.push_back("pairing <" + gens[a].to_string(src) + ", " + gens[b].to_string(src) + ">");
      }
      if (!lie_invariant(gens[a]) || !lie_invariant(gens[b])) continue;
      ++out.bracket_pairs;
      if (phi_f(d, dorfman(src, gens[a], gens[b], h)) != dorfman(tgt, images[a], images[b], ht)) {
        ++out.bracket_failures;
        out.messages.push_back("bracket [" + gens[a].to_string(src) + ", " + gens[b].to_string(src) + "]");
      }
    }
  }
  for (const auto& rho : forms) {
    const DifferentialForm t = tau_f(d, rho);
    for (std::size_t a = 0; a < gens.size(); ++a) {
      if (tau_f(d, clifford_act(src, gens[a], rho)) != clifford_act(tgt, images[a], t)) {
        ++out.clifford_failures;
        out.messages.push_back("clifford " + gens[a].to_string(src) + " on " + rho.to_string(src.coframe_names()));
      }
    }
    bool invariant = true;
    for (auto a : l.src_fiber) {
      Column v = src.zero_column();
      v[a] = FunctionElement(src.context(), GaussianRational(1));
      invariant = invariant && lie_derivative(src, v, rho).is_zero();
    }
    if (!invariant) continue;
    if (tau_f(d, exterior_d(src, rho, h)) != exterior_d(tgt, t, ht)) {
      ++out.chain_failures;
      out.messages.push_back("differential on " + rho.to_string(src.coframe_names()));
    }
  }
  return out;
}

SpinorPresentation presentation_at(const FrameModel& model, const DifferentialForm& rho, const Point& p) {
  const DifferentialForm at = rho.evaluate(p);
  auto lo = at.min_degree();
  if (!lo) throw ZeroSpinorAtPoint("form vanishes at sample point '" + p.label + "'");
  const unsigned m = model.dim();
  const ContextPtr& ctx = model.context();
  SpinorPresentation out{DifferentialForm(ctx, m), at.component(*lo)};
  const DifferentialForm next = at.component(*lo + 2);
  std::vector<Mask> pairs;
  std::vector<DifferentialForm> images;
  for (unsigned i = 0; i < m; ++i) {
    for (unsigned j = i + 1; j < m; ++j) {
      pairs.push_back((Mask{1} << i) | (Mask{1} << j));
      images.push_back(DifferentialForm::monomial(ctx, m, pairs.back()).wedge(out.omega));
    }
  }
  std::map<Mask, std::size_t> row_of;
  for (const auto& f : images) {
    for (const auto& [mask, u] : f.terms()) row_of.try_emplace(mask, row_of.size());
  }
  for (const auto& [mask, u] : next.terms()) row_of.try_emplace(mask, row_of.size());
  if (!row_of.empty()) {
    Matrix a(row_of.size(), images.size());
    Column b(row_of.size());
    for (std::size_t c = 0; c < images.size(); ++c) {
      for (const auto& [mask, u] : images[c].terms()) a(row_of[mask], c) = u;
    }
    for (const auto& [mask, u] : next.terms()) b[row_of[mask]] = u;
    auto res = solve_linear(a, b);
    if (std::holds_alternative<Inconsistency>(res)) {
      throw std::logic_error("spinor is not of the form e^B Omega at " + p.label);
    }
    const auto& sol = std::get<LinearSolution>(res).values;
    for (std::size_t c = 0; c < pairs.size(); ++c) {
      auto v = sol[c].as_element();
      if (!v) throw std::logic_error("non-polynomial B at " + p.label);
      if (!v->is_zero()) out.b.add(pairs[c], *v);
    }
  }
  if (out.b.exp().wedge(out.omega) != at) throw std::logic_error("spinor is not of the form e^B Omega at " + p.label);
  return out;
}

unsigned integral_order_at(const TDualPair& d, const DifferentialForm& rho, const Point& p) {
  const Layout l = layout_of(d);
  const ContextPtr& ctx = d.target->context();
  const unsigned n = l.m + l.k;
  const SpinorPresentation pres = presentation_at(*d.source, rho, p);
  const DifferentialForm fb = pairing_form(l, ctx) + transport(pres.b, ctx).embedded(n);
  DifferentialForm term = transport(pres.omega, ctx).embedded(n);
  const Point tp = transport_point(d, p);
  for (unsigned j = 0; j <= n; ++j) {
    if (!integrate(l, term, ctx).evaluate(tp).is_zero()) return j;
    term = fb.wedge(term);
  }
  throw std::logic_error("fiber integral vanishes to every order at " + p.label);
}

std::vector<TypeChangeRow> type_change_report(const TDualPair& d, const MixedPair& mp, const ContactPair& pair) {
  const Layout l = layout_of(d);
  const ContactPair dual = dualize(d, pair);
  const MixedPair dual_mp = dualize(d, mp);
  auto basic_rank = [&](const std::vector<GenSection>& e, const std::vector<std::size_t>& fiber, const Point& p) {
    std::vector<GenSection> basic;
    for (const auto& x : e) {
      GenSection y = x;
      for (auto a : fiber) y.vec()[a] = FunctionElement(GaussianRational(0));
      for (auto& u : y.form()) u = FunctionElement(GaussianRational(0));
      basic.push_back(std::move(y));
    }
    return anchor_rank_at(basic, p);
  };
  std::vector<TypeChangeRow> out;
  for (const auto& p : d.source->points()) {
    const Point tp = transport_point(d, p);
    TypeChangeRow row;
    row.point = p.label;
    row.k = l.k;
    row.p_e = static_cast<unsigned>(anchor_rank_at({pair.e[0], pair.e[1]}, p));
    row.t_l = l.m - static_cast<unsigned>(anchor_rank_at(pair.l, p));
    row.dual_p_e = static_cast<unsigned>(anchor_rank_at({dual.e[0], dual.e[1]}, tp));
    row.dual_t_l = l.m - static_cast<unsigned>(anchor_rank_at(dual.l, tp));
    row.j1 = integral_order_at(d, mp.rho1, p);
    row.j2 = integral_order_at(d, mp.rho2, p);
    const auto check_spinor = [&](const DifferentialForm& rho, const DifferentialForm& image, unsigned j) {
      const int before = static_cast<int>(spinor_type_at(rho, p));
      const int after = static_cast<int>(spinor_type_at(image, tp));
      if (after != before + 2 * static_cast<int>(j) - static_cast<int>(l.k)) {
        throw std::logic_error("type(tau rho) != type(rho) + 2j - k at " + p.label);
      }
    };
    check_spinor(mp.rho1, dual_mp.rho1, row.j1);
    check_spinor(mp.rho2, dual_mp.rho2, row.j2);
    const int shift = static_cast<int>(row.dual_t_l) - static_cast<int>(row.t_l);
    if (shift != static_cast<int>(row.j1 + row.j2) - static_cast<int>(l.k)) {
      throw std::logic_error("t~ - t != j1 + j2 - k at " + p.label);
    }
    row.basic_anchors_vanish =
        basic_rank({pair.e[0], pair.e[1]}, l.src_fiber, p) == 0 && basic_rank({dual.e[0], dual.e[1]}, l.tgt_fiber, tp) == 0;
    const int dp = std::abs(static_cast<int>(row.dual_p_e) - static_cast<int>(row.p_e));
    if (dp > static_cast<int>(l.k)) throw std::logic_error("|p~ - p| > k at " + p.label);
    out.push_back(std::move(row));
  }
  return out;
}

DoubleDualityReport double_duality_check(const MixedPair& mp) {
  const TDualPair d = trivial_circle_pair(mp.model);
  const unsigned m = mp.model->dim();
  const ContextPtr& ctx = d.source->context();
  const FunctionElement i(ctx, GaussianRational::i());
  const DifferentialForm dt = DifferentialForm::coframe(ctx, m + 1, m);
  const DifferentialForm rho = mp.rho1.embedded(m + 1) + dt.wedge(mp.rho2.embedded(m + 1)).scaled(i);
  const DifferentialForm image = tau_f(d, rho);
  const DifferentialForm dtt = DifferentialForm::coframe(d.target->context(), m + 1, m);
  const DifferentialForm expected =
      transport(mp.rho2, d.target->context()).embedded(m + 1) +
      dtt.wedge(transport(mp.rho1, d.target->context()).embedded(m + 1)).scaled(FunctionElement(d.target->context(), GaussianRational::i()));
  DoubleDualityReport out;
  const unsigned parity = mp.rho2.parity().value_or(0);
  out.predicted_phase = parity == 0 ? GaussianRational::i() : -GaussianRational::i();
  if (expected.is_zero()) return out;
  const auto& [mask, coeff] = *expected.terms().begin();
  const auto ratio = image.coefficient(mask).divide_exact(coeff);
  if (!ratio || !ratio->is_constant()) return out;
  out.phase = ratio->constant_value();
  out.swapped = image == expected.scaled(*ratio);
  return out;
}

}  // namespace gencontact
