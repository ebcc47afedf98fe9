#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "gencontact/linear_solve.hpp"

namespace gencontact {

/// Set of coframe indices, bit a <-> alpha^a. Words are increasing products.
using Mask = std::uint32_t;

inline unsigned mask_degree(Mask m) { return static_cast<unsigned>(__builtin_popcount(m)); }
/// Sign of alpha^A ^ alpha^B relative to alpha^(A|B); zero when A and B overlap.
int wedge_sign(Mask a, Mask b);

/// Mixed-degree form sum_I u_I alpha^I with coefficients in the scalar ring.
class DifferentialForm {
 public:
  DifferentialForm() = default;
  DifferentialForm(ContextPtr ctx, unsigned dim) : ctx_(std::move(ctx)), dim_(dim) {}

  static DifferentialForm scalar(const ContextPtr& ctx, unsigned dim, const FunctionElement& u);
  static DifferentialForm monomial(const ContextPtr& ctx, unsigned dim, Mask m,
                                   const FunctionElement& u = FunctionElement(1));
  static DifferentialForm coframe(const ContextPtr& ctx, unsigned dim, std::size_t a);

  const ContextPtr& context() const { return ctx_; }
  unsigned dim() const { return dim_; }
  const std::map<Mask, FunctionElement>& terms() const { return terms_; }

  FunctionElement coefficient(Mask m) const;
  void add(Mask m, const FunctionElement& u);

  bool is_zero() const { return terms_.empty(); }
  std::optional<unsigned> min_degree() const;
  std::optional<unsigned> max_degree() const;
  DifferentialForm component(unsigned degree) const;
  bool is_homogeneous() const;
  /// 0 for even, 1 for odd, nullopt for mixed parity or zero.
  std::optional<unsigned> parity() const;

  DifferentialForm& operator+=(const DifferentialForm& o);
  DifferentialForm& operator-=(const DifferentialForm& o);
  friend DifferentialForm operator+(DifferentialForm a, const DifferentialForm& b) { return a += b; }
  friend DifferentialForm operator-(DifferentialForm a, const DifferentialForm& b) { return a -= b; }
  DifferentialForm operator-() const;
  DifferentialForm scaled(const FunctionElement& u) const;
  DifferentialForm wedge(const DifferentialForm& o) const;
  /// Left contraction with the vector sum_a x[a] X_a.
  DifferentialForm interior(const Column& x) const;
  DifferentialForm interior_basis(std::size_t a) const;
  DifferentialForm conj() const;
  /// Order reversal on each homogeneous piece: degree k picks up (-1)^(k(k-1)/2).
  DifferentialForm reversed() const;
  /// exp of a form of even degree, computed as a finite sum.
  DifferentialForm exp() const;
  DifferentialForm evaluate(const Point& p) const;
  DifferentialForm lift_to(const ContextPtr& ctx) const;
  /// Same form in a larger ambient frame; `shift` moves every index up.
  DifferentialForm embedded(unsigned new_dim, unsigned shift = 0) const;

  friend bool operator==(const DifferentialForm& a, const DifferentialForm& b);
  friend bool operator!=(const DifferentialForm& a, const DifferentialForm& b) { return !(a == b); }

  /// Components of a 1-form.
  Column one_form_coefficients() const;
  std::string to_string(const std::vector<std::string>& coframe_names) const;

 private:
  void check_compatible(const DifferentialForm& o) const;

  ContextPtr ctx_;
  unsigned dim_ = 0;
  std::map<Mask, FunctionElement> terms_;
};

}  // namespace gencontact
