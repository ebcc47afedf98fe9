#include "gencontact/function_element.hpp"

#include <algorithm>
#include <sstream>

#include "gencontact/errors.hpp"

namespace gencontact {

namespace {

bool is_unit_monomial(const Monomial& m) {
  return std::all_of(m.begin(), m.end(), [](std::uint16_t e) { return e == 0; });
}

// Solves A y = b over Q(i) for square A; nullopt when singular.
std::optional<std::vector<GaussianRational>> dense_solve(std::vector<std::vector<GaussianRational>> a,
                                                          std::vector<GaussianRational> b) {
  const std::size_t n = a.size();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    while (piv < n && a[piv][col].is_zero()) ++piv;
    if (piv == n) return std::nullopt;
    std::swap(a[piv], a[col]);
    std::swap(b[piv], b[col]);
    const GaussianRational inv = a[col][col].inverse();
    for (std::size_t k = col; k < n; ++k) a[col][k] *= inv;
    b[col] *= inv;
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || a[r][col].is_zero()) continue;
      const GaussianRational f = a[r][col];
      for (std::size_t k = col; k < n; ++k) a[r][k] -= f * a[col][k];
      b[r] -= f * b[col];
    }
  }
  return b;
}

// Solves A y = b over Q(i) for a general A (rows x cols); free unknowns are zero.
std::optional<std::vector<GaussianRational>> dense_solve_general(std::vector<std::vector<GaussianRational>> a,
                                                                  std::vector<GaussianRational> b,
                                                                  std::size_t cols) {
  const std::size_t rows = a.size();
  std::vector<std::size_t> pivots;
  std::size_t cur = 0;
  for (std::size_t col = 0; col < cols && cur < rows; ++col) {
    std::size_t piv = cur;
    while (piv < rows && a[piv][col].is_zero()) ++piv;
    if (piv == rows) continue;
    std::swap(a[piv], a[cur]);
    std::swap(b[piv], b[cur]);
    const GaussianRational inv = a[cur][col].inverse();
    for (std::size_t k = col; k < cols; ++k) a[cur][k] *= inv;
    b[cur] *= inv;
    for (std::size_t r = 0; r < rows; ++r) {
      if (r == cur || a[r][col].is_zero()) continue;
      const GaussianRational f = a[r][col];
      for (std::size_t k = col; k < cols; ++k) {
        if (!a[cur][k].is_zero()) a[r][k] -= f * a[cur][k];
      }
      b[r] -= f * b[cur];
    }
    pivots.push_back(col);
    ++cur;
  }
  for (std::size_t r = cur; r < rows; ++r) {
    if (!b[r].is_zero()) return std::nullopt;
  }
  std::vector<GaussianRational> y(cols);
  for (std::size_t r = 0; r < pivots.size(); ++r) y[pivots[r]] = b[r];
  return y;
}

// Normal-form monomials of total degree <= max_degree.
std::vector<Monomial> normal_monomials(const ScalarContext& ctx, unsigned max_degree, std::size_t cap) {
  const std::size_t n = ctx.generator_count();
  std::vector<unsigned> bound(n, max_degree);
  for (const auto& r : ctx.relations()) bound[r.symbol] = std::min<unsigned>(max_degree, r.power - 1);
  std::vector<Monomial> out;
  Monomial m(n, 0);
  auto rec = [&](auto&& self, std::size_t g, unsigned left) -> bool {
    if (out.size() > cap) return false;
    if (g == n) {
      out.push_back(m);
      return true;
    }
    for (unsigned e = 0; e <= std::min(left, bound[g]); ++e) {
      m[g] = static_cast<std::uint16_t>(e);
      if (!self(self, g + 1, left - e)) return false;
    }
    m[g] = 0;
    return true;
  };
  if (!rec(rec, 0, max_degree)) return {};
  return out;
}

}  // namespace

FunctionElement::FunctionElement(const GaussianRational& c) {
  if (!c.is_zero()) terms_.emplace(Monomial{}, c);
}

FunctionElement::FunctionElement(ContextPtr ctx, const GaussianRational& c) : ctx_(std::move(ctx)) {
  if (!c.is_zero()) terms_.emplace(ctx_ ? ctx_->unit_monomial() : Monomial{}, c);
}

FunctionElement::FunctionElement(ContextPtr ctx, Terms terms) : ctx_(std::move(ctx)) {
  terms_ = ctx_ ? ctx_->normalize(std::move(terms)) : std::move(terms);
}

FunctionElement FunctionElement::generator(const ContextPtr& ctx, std::size_t index) {
  Monomial m = ctx->unit_monomial();
  m.at(index) = 1;
  Terms t;
  t.emplace(std::move(m), 1);
  return {ctx, std::move(t)};
}

FunctionElement FunctionElement::generator(const ContextPtr& ctx, const std::string& name) {
  return generator(ctx, ctx->generator_index(name));
}

void FunctionElement::adopt(const ContextPtr& other) {
  if (ctx_ == other || !other) return;
  if (ctx_) throw ContextMismatch();
  // Bare constant: move onto the unit monomial of the other context.
  Terms t;
  for (const auto& [m, c] : terms_) t.emplace(other->unit_monomial(), c);
  terms_ = std::move(t);
  ctx_ = other;
}

bool FunctionElement::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && is_unit_monomial(terms_.begin()->first));
}

GaussianRational FunctionElement::constant_value() const {
  if (terms_.empty()) return 0;
  if (!is_constant()) throw Error("element is not constant: " + to_string());
  return terms_.begin()->second;
}

bool FunctionElement::is_unit() const { return try_inverse().has_value(); }

std::optional<FunctionElement> FunctionElement::try_inverse() const {
  if (is_zero()) return std::nullopt;
  if (is_constant()) return FunctionElement(ctx_, constant_value().inverse());
  if (!ctx_) return std::nullopt;
  // Elements of the finite extension spanned by algebraic constants.
  std::vector<std::size_t> alg;
  std::vector<unsigned> bound(ctx_->generator_count(), 0);
  for (const auto& r : ctx_->relations()) {
    if (ctx_->generator(r.symbol).kind == GeneratorKind::Algebraic) {
      alg.push_back(r.symbol);
      bound[r.symbol] = r.power;
    }
  }
  for (const auto& [m, c] : terms_) {
    for (std::size_t g = 0; g < m.size(); ++g) {
      if (m[g] > 0 && ctx_->generator(g).kind != GeneratorKind::Algebraic) return std::nullopt;
    }
  }
  std::vector<Monomial> basis{ctx_->unit_monomial()};
  for (std::size_t g : alg) {
    std::vector<Monomial> next;
    for (const auto& b : basis) {
      for (unsigned e = 0; e < bound[g]; ++e) {
        Monomial m = b;
        m[g] = static_cast<std::uint16_t>(e);
        next.push_back(m);
      }
    }
    basis = std::move(next);
  }
  const std::size_t n = basis.size();
  std::vector<std::vector<GaussianRational>> a(n, std::vector<GaussianRational>(n));
  for (std::size_t j = 0; j < n; ++j) {
    Terms single;
    single.emplace(basis[j], 1);
    Terms prod = ctx_->multiply(terms_, single);
    for (const auto& [m, c] : prod) {
      auto it = std::find(basis.begin(), basis.end(), m);
      if (it == basis.end()) return std::nullopt;
      a[static_cast<std::size_t>(it - basis.begin())][j] = c;
    }
  }
  std::vector<GaussianRational> rhs(n);
  rhs[0] = 1;
  auto y = dense_solve(std::move(a), std::move(rhs));
  if (!y) return std::nullopt;
  Terms inv;
  for (std::size_t j = 0; j < n; ++j) add_term(inv, basis[j], (*y)[j]);
  return FunctionElement(ctx_, std::move(inv));
}

unsigned FunctionElement::degree() const {
  unsigned best = 0;
  for (const auto& [m, c] : terms_) {
    unsigned d = 0;
    for (auto e : m) d += e;
    best = std::max(best, d);
  }
  return best;
}

FunctionElement& FunctionElement::operator+=(const FunctionElement& o) {
  if (o.terms_.empty()) return *this;
  FunctionElement rhs = o;
  adopt(o.ctx_);
  rhs.adopt(ctx_);
  for (const auto& [m, c] : rhs.terms_) add_term(terms_, m, c);
  return *this;
}

FunctionElement& FunctionElement::operator-=(const FunctionElement& o) {
  if (o.terms_.empty()) return *this;
  FunctionElement rhs = o;
  adopt(o.ctx_);
  rhs.adopt(ctx_);
  for (const auto& [m, c] : rhs.terms_) add_term(terms_, m, -c);
  return *this;
}

FunctionElement& FunctionElement::operator*=(const FunctionElement& o) {
  if (terms_.empty()) {
    if (!ctx_) ctx_ = o.ctx_;
    return *this;
  }
  if (o.terms_.empty()) {
    terms_.clear();
    if (!ctx_) ctx_ = o.ctx_;
    return *this;
  }
  FunctionElement rhs = o;
  adopt(o.ctx_);
  rhs.adopt(ctx_);
  if (rhs.is_constant()) {
    const GaussianRational c = rhs.terms_.begin()->second;
    if (c.is_one()) return *this;
    for (auto& [m, v] : terms_) v *= c;
    return *this;
  }
  if (is_constant()) {
    const GaussianRational c = terms_.begin()->second;
    terms_ = rhs.terms_;
    for (auto& [m, v] : terms_) v *= c;
    return *this;
  }
  terms_ = ctx_->multiply(terms_, rhs.terms_);
  return *this;
}

FunctionElement FunctionElement::operator-() const {
  FunctionElement r = *this;
  for (auto& [m, c] : r.terms_) c = -c;
  return r;
}

FunctionElement FunctionElement::pow(unsigned k) const {
  FunctionElement r(ctx_, 1);
  for (unsigned i = 0; i < k; ++i) r *= *this;
  return r;
}

bool operator==(const FunctionElement& a, const FunctionElement& b) {
  if (a.ctx_ == b.ctx_ || !a.ctx_ || !b.ctx_) {
    if (a.ctx_ == b.ctx_) return a.terms_ == b.terms_;
    return (a - b).is_zero();
  }
  throw ContextMismatch();
}

FunctionElement FunctionElement::conj() const {
  FunctionElement r = *this;
  for (auto& [m, c] : r.terms_) c = c.conj();
  return r;
}

FunctionElement FunctionElement::real_part() const {
  FunctionElement r(ctx_, Terms{});
  for (const auto& [m, c] : terms_) add_term(r.terms_, m, GaussianRational(c.real()));
  return r;
}

FunctionElement FunctionElement::imag_part() const {
  FunctionElement r(ctx_, Terms{});
  for (const auto& [m, c] : terms_) add_term(r.terms_, m, GaussianRational(c.imag()));
  return r;
}

FunctionElement FunctionElement::scaled(const GaussianRational& c) const {
  if (c.is_zero()) return FunctionElement(ctx_, Terms{});
  FunctionElement r = *this;
  for (auto& [m, v] : r.terms_) v *= c;
  return r;
}

FunctionElement FunctionElement::derive(const std::string& derivation) const {
  if (!ctx_) return FunctionElement();
  auto d = ctx_->find_derivation(derivation);
  if (!d) throw UnknownSymbol(derivation);
  return derive(*d);
}

FunctionElement FunctionElement::derive(std::size_t derivation) const {
  if (!ctx_) return FunctionElement();
  return FunctionElement(ctx_, ctx_->derive(derivation, terms_));
}

FunctionElement FunctionElement::evaluate(const Point& p) const {
  if (!ctx_) return *this;
  Terms out;
  for (const auto& [m, c] : terms_) {
    GaussianRational v = c;
    Monomial rest = m;
    for (std::size_t g = 0; g < m.size(); ++g) {
      if (m[g] == 0) continue;
      const auto& val = g < p.values.size() ? p.values[g] : std::nullopt;
      if (!val) continue;
      for (unsigned e = 0; e < m[g]; ++e) v *= *val;
      rest[g] = 0;
    }
    add_term(out, rest, v);
  }
  return FunctionElement(ctx_, std::move(out));
}

std::pair<Monomial, GaussianRational> FunctionElement::leading_term() const {
  if (terms_.empty()) throw Error("leading term of zero");
  auto best = terms_.begin();
  for (auto it = std::next(terms_.begin()); it != terms_.end(); ++it) {
    if (ctx_ && ctx_->monomial_less(best->first, it->first)) best = it;
  }
  return *best;
}

FunctionElement FunctionElement::monic() const {
  if (terms_.empty()) return *this;
  return scaled(leading_term().second.inverse());
}

std::optional<FunctionElement> FunctionElement::divide_exact(const FunctionElement& divisor) const {
  if (divisor.is_zero()) return std::nullopt;
  if (is_zero()) return FunctionElement(ctx_ ? ctx_ : divisor.ctx_, Terms{});
  if (divisor.is_constant()) return scaled(divisor.constant_value().inverse());
  if (auto inv = divisor.try_inverse()) return *this * *inv;
  FunctionElement rem = *this;
  FunctionElement d = divisor;
  rem.adopt(d.ctx_);
  d.adopt(rem.ctx_);
  const auto [lm, lc] = d.leading_term();
  FunctionElement quot(rem.ctx_, Terms{});
  bool ok = true;
  for (int guard = 0; !rem.is_zero(); ++guard) {
    if (guard > 20000) {
      ok = false;
      break;
    }
    const auto [rm, rc] = rem.leading_term();
    Monomial t = rm;
    for (std::size_t g = 0; g < t.size() && ok; ++g) {
      if (rm[g] < lm[g]) ok = false;
      else t[g] = static_cast<std::uint16_t>(rm[g] - lm[g]);
    }
    if (!ok) break;
    Terms tt;
    tt.emplace(t, rc / lc);
    FunctionElement step(rem.ctx_, std::move(tt));
    quot += step;
    rem -= step * d;
  }
  const FunctionElement target = lift_to(rem.ctx_);
  if (ok && quot * d == target) return quot;
  if (rem.ctx_->relations().empty()) return std::nullopt;
  // Modulo relations leading terms may reduce, so search for a quotient of
  // bounded degree by linear algebra over Q(i).
  const unsigned pd = target.degree();
  const unsigned qd = d.degree();
  const unsigned bound = (pd > qd ? pd - qd : 0) + 2;
  auto monos = normal_monomials(*rem.ctx_, bound, 600);
  if (monos.empty()) return std::nullopt;
  std::map<Monomial, std::size_t> row_of;
  std::vector<Terms> images;
  for (const auto& m : monos) {
    Terms single;
    single.emplace(m, 1);
    images.push_back(rem.ctx_->multiply(single, d.terms_));
    for (const auto& [mm, c] : images.back()) row_of.try_emplace(mm, row_of.size());
  }
  for (const auto& [mm, c] : target.terms_) row_of.try_emplace(mm, row_of.size());
  std::vector<std::vector<GaussianRational>> a(row_of.size(), std::vector<GaussianRational>(monos.size()));
  std::vector<GaussianRational> b(row_of.size());
  for (std::size_t j = 0; j < monos.size(); ++j) {
    for (const auto& [mm, c] : images[j]) a[row_of[mm]][j] = c;
  }
  for (const auto& [mm, c] : target.terms_) b[row_of[mm]] = c;
  auto y = dense_solve_general(std::move(a), std::move(b), monos.size());
  if (!y) return std::nullopt;
  Terms q;
  for (std::size_t j = 0; j < monos.size(); ++j) add_term(q, monos[j], (*y)[j]);
  return FunctionElement(rem.ctx_, std::move(q));
}

FunctionElement FunctionElement::lift_to(const ContextPtr& target) const {
  if (ctx_ == target) return *this;
  if (!ctx_) {
    FunctionElement r = *this;
    r.adopt(target);
    return r;
  }
  std::vector<std::size_t> map(ctx_->generator_count());
  for (std::size_t g = 0; g < map.size(); ++g) map[g] = target->generator_index(ctx_->generator(g).name);
  Terms out;
  for (const auto& [m, c] : terms_) {
    Monomial tm = target->unit_monomial();
    for (std::size_t g = 0; g < m.size(); ++g) tm[map[g]] = m[g];
    add_term(out, tm, c);
  }
  return FunctionElement(target, std::move(out));
}

std::string monomial_to_string(const ScalarContext& ctx, const Monomial& m) {
  std::string out;
  for (std::size_t g = 0; g < m.size(); ++g) {
    if (m[g] == 0) continue;
    if (!out.empty()) out += "*";
    out += ctx.generator(g).name;
    if (m[g] > 1) out += "^" + std::to_string(m[g]);
  }
  return out;
}

std::string FunctionElement::to_string() const {
  if (terms_.empty()) return "0";
  std::vector<const Terms::value_type*> order;
  for (const auto& t : terms_) order.push_back(&t);
  if (ctx_) {
    std::stable_sort(order.begin(), order.end(),
                     [&](auto* a, auto* b) { return ctx_->monomial_less(b->first, a->first); });
  }
  std::string out;
  bool first = true;
  for (const auto* t : order) {
    const Monomial& m = t->first;
    GaussianRational c = t->second;
    const bool unit = is_unit_monomial(m);
    bool negative = false;
    if (c.is_real() && sgn(c.real()) < 0) {
      negative = true;
      c = -c;
    } else if (sgn(c.real()) == 0 && sgn(c.imag()) < 0) {
      negative = true;
      c = -c;
    }
    std::string body;
    if (unit) {
      body = c.to_string(false);
    } else {
      const std::string mono = monomial_to_string(*ctx_, m);
      if (c.is_one()) {
        body = mono;
      } else {
        body = c.to_string(true) + "*" + mono;
      }
    }
    if (first) {
      out = negative ? "-" + body : body;
    } else {
      out += negative ? " - " : " + ";
      out += body;
    }
    first = false;
  }
  return out;
}

}  // namespace gencontact
