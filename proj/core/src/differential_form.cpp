#include "gencontact/differential_form.hpp"

#include <algorithm>

#include "gencontact/errors.hpp"

namespace gencontact {

int wedge_sign(Mask a, Mask b) {
  if ((a & b) != 0) return 0;
  unsigned swaps = 0;
  for (Mask rest = b; rest != 0; rest &= rest - 1) {
    const unsigned j = static_cast<unsigned>(__builtin_ctz(rest));
    swaps += static_cast<unsigned>(__builtin_popcount(a >> (j + 1)));
  }
  return (swaps % 2 == 0) ? 1 : -1;
}

DifferentialForm DifferentialForm::scalar(const ContextPtr& ctx, unsigned dim, const FunctionElement& u) {
  return monomial(ctx, dim, 0, u);
}

DifferentialForm DifferentialForm::monomial(const ContextPtr& ctx, unsigned dim, Mask m, const FunctionElement& u) {
  DifferentialForm f(ctx, dim);
  f.add(m, u);
  return f;
}

DifferentialForm DifferentialForm::coframe(const ContextPtr& ctx, unsigned dim, std::size_t a) {
  return monomial(ctx, dim, Mask{1} << a);
}

FunctionElement DifferentialForm::coefficient(Mask m) const {
  auto it = terms_.find(m);
  if (it == terms_.end()) return FunctionElement(ctx_, 0);
  return it->second;
}

void DifferentialForm::add(Mask m, const FunctionElement& u) {
  if (u.is_zero()) return;
  if (dim_ < 32 && (m >> dim_) != 0) throw Error("form index out of range");
  auto [it, inserted] = terms_.try_emplace(m, u);
  if (!inserted) {
    it->second += u;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

std::optional<unsigned> DifferentialForm::min_degree() const {
  std::optional<unsigned> best;
  for (const auto& [m, u] : terms_) {
    const unsigned d = mask_degree(m);
    if (!best || d < *best) best = d;
  }
  return best;
}

std::optional<unsigned> DifferentialForm::max_degree() const {
  std::optional<unsigned> best;
  for (const auto& [m, u] : terms_) {
    const unsigned d = mask_degree(m);
    if (!best || d > *best) best = d;
  }
  return best;
}

DifferentialForm DifferentialForm::component(unsigned degree) const {
  DifferentialForm out(ctx_, dim_);
  for (const auto& [m, u] : terms_) {
    if (mask_degree(m) == degree) out.terms_.emplace(m, u);
  }
  return out;
}

bool DifferentialForm::is_homogeneous() const {
  auto lo = min_degree();
  return !lo || *lo == *max_degree();
}

std::optional<unsigned> DifferentialForm::parity() const {
  std::optional<unsigned> p;
  for (const auto& [m, u] : terms_) {
    const unsigned q = mask_degree(m) % 2;
    if (p && *p != q) return std::nullopt;
    p = q;
  }
  return p;
}

void DifferentialForm::check_compatible(const DifferentialForm& o) const {
  if (dim_ != o.dim_ && !terms_.empty() && !o.terms_.empty()) throw Error("forms of different dimension");
}

DifferentialForm& DifferentialForm::operator+=(const DifferentialForm& o) {
  check_compatible(o);
  if (!ctx_) ctx_ = o.ctx_;
  if (dim_ == 0) dim_ = o.dim_;
  for (const auto& [m, u] : o.terms_) add(m, u);
  return *this;
}

DifferentialForm& DifferentialForm::operator-=(const DifferentialForm& o) {
  check_compatible(o);
  if (!ctx_) ctx_ = o.ctx_;
  if (dim_ == 0) dim_ = o.dim_;
  for (const auto& [m, u] : o.terms_) add(m, -u);
  return *this;
}

DifferentialForm DifferentialForm::operator-() const {
  DifferentialForm out = *this;
  for (auto& [m, u] : out.terms_) u = -u;
  return out;
}

DifferentialForm DifferentialForm::scaled(const FunctionElement& u) const {
  DifferentialForm out(ctx_, dim_);
  if (u.is_zero()) return out;
  for (const auto& [m, v] : terms_) out.add(m, v * u);
  return out;
}

DifferentialForm DifferentialForm::wedge(const DifferentialForm& o) const {
  check_compatible(o);
  DifferentialForm out(ctx_ ? ctx_ : o.ctx_, std::max(dim_, o.dim_));
  for (const auto& [ma, ua] : terms_) {
    for (const auto& [mb, ub] : o.terms_) {
      const int s = wedge_sign(ma, mb);
      if (s == 0) continue;
      FunctionElement c = ua * ub;
      out.add(ma | mb, s > 0 ? c : -c);
    }
  }
  return out;
}

DifferentialForm DifferentialForm::interior_basis(std::size_t a) const {
  DifferentialForm out(ctx_, dim_);
  const Mask bit = Mask{1} << a;
  for (const auto& [m, u] : terms_) {
    if ((m & bit) == 0) continue;
    const unsigned before = static_cast<unsigned>(__builtin_popcount(m & (bit - 1)));
    out.add(m & ~bit, before % 2 == 0 ? u : -u);
  }
  return out;
}

DifferentialForm DifferentialForm::interior(const Column& x) const {
  DifferentialForm out(ctx_, dim_);
  for (std::size_t a = 0; a < x.size(); ++a) {
    if (x[a].is_zero()) continue;
    out += interior_basis(a).scaled(x[a]);
  }
  return out;
}

DifferentialForm DifferentialForm::conj() const {
  DifferentialForm out = *this;
  for (auto& [m, u] : out.terms_) u = u.conj();
  return out;
}

DifferentialForm DifferentialForm::reversed() const {
  DifferentialForm out = *this;
  for (auto& [m, u] : out.terms_) {
    const unsigned k = mask_degree(m);
    if ((k * (k - (k > 0 ? 1 : 0)) / 2) % 2 == 1) u = -u;
  }
  return out;
}

DifferentialForm DifferentialForm::exp() const {
  if (auto p = parity(); p && *p == 1) throw Error("exp of an odd form");
  DifferentialForm out = scalar(ctx_, dim_, FunctionElement(ctx_, 1));
  DifferentialForm power = out;
  for (unsigned k = 1; k <= dim_; ++k) {
    power = power.wedge(*this).scaled(FunctionElement(ctx_, GaussianRational(mpq_class(1, k))));
    if (power.is_zero()) break;
    out += power;
  }
  return out;
}

DifferentialForm DifferentialForm::evaluate(const Point& p) const {
  DifferentialForm out(ctx_, dim_);
  for (const auto& [m, u] : terms_) out.add(m, u.evaluate(p));
  return out;
}

DifferentialForm DifferentialForm::lift_to(const ContextPtr& ctx) const {
  DifferentialForm out(ctx, dim_);
  for (const auto& [m, u] : terms_) out.add(m, u.lift_to(ctx));
  return out;
}

DifferentialForm DifferentialForm::embedded(unsigned new_dim, unsigned shift) const {
  if (new_dim < dim_ + shift) throw Error("embedding into a smaller frame");
  DifferentialForm out(ctx_, new_dim);
  for (const auto& [m, u] : terms_) out.add(m << shift, u);
  return out;
}

bool operator==(const DifferentialForm& a, const DifferentialForm& b) {
  if (a.terms_.size() != b.terms_.size()) return false;
  auto it = b.terms_.begin();
  for (const auto& [m, u] : a.terms_) {
    if (it->first != m || it->second != u) return false;
    ++it;
  }
  return true;
}

Column DifferentialForm::one_form_coefficients() const {
  Column out(dim_);
  for (auto& v : out) v = FunctionElement(ctx_, 0);
  for (const auto& [m, u] : terms_) {
    if (mask_degree(m) != 1) throw Error("not a 1-form");
    out[static_cast<std::size_t>(__builtin_ctz(m))] = u;
  }
  return out;
}

namespace {

std::string coefficient_prefix(const FunctionElement& u, bool unit_monomial) {
  std::string s = u.to_string();
  if (unit_monomial) return s;
  if (s == "1") return "";
  if (s == "-1") return "-";
  if (u.term_count() > 1) return "(" + s + ")*";
  return s + "*";
}

}  // namespace

std::string DifferentialForm::to_string(const std::vector<std::string>& names) const {
  if (terms_.empty()) return "0";
  std::vector<Mask> order;
  for (const auto& [m, u] : terms_) order.push_back(m);
  std::stable_sort(order.begin(), order.end(), [](Mask a, Mask b) {
    if (mask_degree(a) != mask_degree(b)) return mask_degree(a) < mask_degree(b);
    return a < b;
  });
  std::string out;
  for (Mask m : order) {
    std::string word;
    for (std::size_t a = 0; a < dim_; ++a) {
      if ((m >> a) & 1U) {
        if (!word.empty()) word += "^";
        word += a < names.size() ? names[a] : "e" + std::to_string(a);
      }
    }
    std::string term = coefficient_prefix(terms_.at(m), m == 0) + word;
    if (out.empty()) {
      out = term;
    } else if (term.rfind('-', 0) == 0) {
      out += " - " + term.substr(1);
    } else {
      out += " + " + term;
    }
  }
  return out;
}

}  // namespace gencontact
