#pragma once

#include <map>
#include <string>
#include <variant>
#include <vector>

#include "gencontact/gen_section.hpp"

namespace gencontact {

/// Result of evaluating an expression: a scalar, a section of TM + T*M or a
/// differential form. Degree-1 forms convert to sections on demand.
class Value {
 public:
  Value(FunctionElement u) : v_(std::move(u)) {}   // NOLINT(google-explicit-constructor)
  Value(GenSection s) : v_(std::move(s)) {}        // NOLINT(google-explicit-constructor)
  Value(DifferentialForm f) : v_(std::move(f)) {}  // NOLINT(google-explicit-constructor)

  bool is_scalar() const { return std::holds_alternative<FunctionElement>(v_); }
  bool is_section() const { return std::holds_alternative<GenSection>(v_); }
  bool is_form() const { return std::holds_alternative<DifferentialForm>(v_); }

  const FunctionElement& scalar() const;
  const GenSection& section() const { return std::get<GenSection>(v_); }
  const DifferentialForm& form() const { return std::get<DifferentialForm>(v_); }

  std::string kind_name() const;

 private:
  std::variant<FunctionElement, GenSection, DifferentialForm> v_;
};

/// Names visible to an expression: the scalar generators of a context, an
/// optional frame with its coframe, and user definitions (which shadow both).
class Scope {
 public:
  explicit Scope(ContextPtr ctx) : ctx_(std::move(ctx)) {}
  Scope(ContextPtr ctx, std::vector<std::string> vectors, std::vector<std::string> coframe)
      : ctx_(std::move(ctx)), vectors_(std::move(vectors)), coframe_(std::move(coframe)) {}
  explicit Scope(const ModelPtr& model);

  const ContextPtr& context() const { return ctx_; }
  const ModelPtr& model() const { return model_; }
  unsigned dim() const { return static_cast<unsigned>(vectors_.size()); }
  bool has_frame() const { return !vectors_.empty(); }
  const std::vector<std::string>& vectors() const { return vectors_; }
  const std::vector<std::string>& coframe() const { return coframe_; }

  void define(const std::string& name, Value v);
  const Value* lookup(const std::string& name) const;

 private:
  ContextPtr ctx_;
  ModelPtr model_;
  std::vector<std::string> vectors_;
  std::vector<std::string> coframe_;
  std::map<std::string, Value> defs_;
};

/// Grammar: sums and differences of products; `*` multiplies (scalars,
/// scalar times section or form, wedge of forms), `/` divides by an invertible
/// scalar, `.` is the Clifford action of a section on a form (right
/// associative), `^` is an integer power on scalars and the wedge product
/// otherwise. Unary minus binds looser than `^`. `i` is the imaginary unit.
/// Functions: Re, Im, conj, exp, d. Errors carry the column.
Value evaluate_expression(const std::string& text, const Scope& scope);

FunctionElement parse_scalar(const std::string& text, const Scope& scope);
GenSection parse_section(const std::string& text, const Scope& scope);
DifferentialForm parse_form(const std::string& text, const Scope& scope);

/// Converts a value to a section/form, promoting 1-forms and scalars as needed.
GenSection to_section(const Value& v, const Scope& scope);
DifferentialForm to_form(const Value& v, const Scope& scope);

}  // namespace gencontact
