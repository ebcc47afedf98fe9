#pragma once

#include <optional>
#include <string>
#include <vector>

#include "gencontact/scalar_context.hpp"

namespace gencontact {

/// Values assigned to generators at a sample point. Algebraic constants are
/// never assigned.
struct Point {
  std::string label;
  std::vector<std::optional<GaussianRational>> values;
};

/// Element of the scalar ring in normal form. A default-constructed element
/// is a bare constant without a context and adopts the context of whatever it
/// is combined with.
class FunctionElement {
 public:
  FunctionElement() = default;
  FunctionElement(const GaussianRational& c);  // NOLINT(google-explicit-constructor)
  FunctionElement(long c) : FunctionElement(GaussianRational(c)) {}  // NOLINT
  FunctionElement(ContextPtr ctx, const GaussianRational& c);
  FunctionElement(ContextPtr ctx, Terms terms);  // normalizes

  static FunctionElement generator(const ContextPtr& ctx, std::size_t index);
  static FunctionElement generator(const ContextPtr& ctx, const std::string& name);

  const ContextPtr& context() const { return ctx_; }
  const Terms& terms() const { return terms_; }

  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;  // only the unit monomial
  /// Constant value; requires is_constant().
  GaussianRational constant_value() const;
  /// Nonzero constant, or nonzero element built from algebraic constants only.
  bool is_unit() const;
  std::optional<FunctionElement> try_inverse() const;
  std::size_t term_count() const { return terms_.size(); }
  unsigned degree() const;

  FunctionElement& operator+=(const FunctionElement& o);
  FunctionElement& operator-=(const FunctionElement& o);
  FunctionElement& operator*=(const FunctionElement& o);
  friend FunctionElement operator+(FunctionElement a, const FunctionElement& b) { return a += b; }
  friend FunctionElement operator-(FunctionElement a, const FunctionElement& b) { return a -= b; }
  friend FunctionElement operator*(FunctionElement a, const FunctionElement& b) { return a *= b; }
  FunctionElement operator-() const;
  FunctionElement pow(unsigned k) const;

  friend bool operator==(const FunctionElement& a, const FunctionElement& b);
  friend bool operator!=(const FunctionElement& a, const FunctionElement& b) { return !(a == b); }

  FunctionElement conj() const;
  FunctionElement real_part() const;
  FunctionElement imag_part() const;
  FunctionElement scaled(const GaussianRational& c) const;

  /// Applies a named derivation.
  FunctionElement derive(const std::string& derivation) const;
  FunctionElement derive(std::size_t derivation) const;

  /// Substitutes the values of the point. Algebraic constants stay symbolic,
  /// so the result is constant unless the context has algebraic constants.
  FunctionElement evaluate(const Point& p) const;

  /// Exact quotient if `divisor` divides this element, else std::nullopt.
  std::optional<FunctionElement> divide_exact(const FunctionElement& divisor) const;
  /// Leading monomial and coefficient in the context's priority order.
  std::pair<Monomial, GaussianRational> leading_term() const;
  /// Divides by the leading coefficient.
  FunctionElement monic() const;

  /// Re-expresses the element in a context that contains all of its generators.
  FunctionElement lift_to(const ContextPtr& target) const;

  std::string to_string() const;

 private:
  void adopt(const ContextPtr& other);

  ContextPtr ctx_;
  Terms terms_;
};

std::string monomial_to_string(const ScalarContext& ctx, const Monomial& m);

}  // namespace gencontact
