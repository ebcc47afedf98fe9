#pragma once

#include <optional>
#include <string>
#include <vector>

#include "gencontact/frame_model.hpp"

namespace gencontact {

/// Section X + xi of TM + T*M written in the frame: vec[a] is the X_a
/// coefficient, form[a] the alpha^a coefficient.
class GenSection {
 public:
  GenSection() = default;
  explicit GenSection(const FrameModel& model) : vec_(model.zero_column()), form_(model.zero_column()) {}
  GenSection(Column vec, Column form);

  static GenSection basis_vector(const FrameModel& model, std::size_t a);
  static GenSection basis_form(const FrameModel& model, std::size_t a);
  static GenSection from_one_form(const FrameModel& model, const DifferentialForm& one_form);
  static GenSection from_vector(const FrameModel& model, const Column& vec);
  /// Splits a column of length 2m (vector part first).
  static GenSection from_column(const Column& column);
  /// The 2m frame generators X_1..X_m, alpha^1..alpha^m.
  static std::vector<GenSection> generators(const FrameModel& model);

  std::size_t dim() const { return vec_.size(); }
  const Column& vec() const { return vec_; }
  const Column& form() const { return form_; }
  Column& vec() { return vec_; }
  Column& form() { return form_; }
  Column as_column() const;
  DifferentialForm one_form(const FrameModel& model) const;

  bool is_zero() const;
  bool is_vector() const;  // no form part
  bool is_form() const;    // no vector part

  GenSection& operator+=(const GenSection& o);
  GenSection& operator-=(const GenSection& o);
  friend GenSection operator+(GenSection a, const GenSection& b) { return a += b; }
  friend GenSection operator-(GenSection a, const GenSection& b) { return a -= b; }
  GenSection operator-() const;
  GenSection scaled(const FunctionElement& u) const;
  GenSection conj() const;
  GenSection evaluate(const Point& p) const;
  friend bool operator==(const GenSection& a, const GenSection& b);
  friend bool operator!=(const GenSection& a, const GenSection& b) { return !(a == b); }

  std::string to_string(const FrameModel& model) const;

 private:
  Column vec_;
  Column form_;
};

/// <X + xi, Y + eta> = (xi(Y) + eta(X)) / 2.
FunctionElement inner_product(const GenSection& x, const GenSection& y);

/// Exact 1-form du as a section.
GenSection exact_section(const FrameModel& model, const FunctionElement& u);

/// Dorfman bracket [X,Y] + L_X eta - i_Y d xi, optionally twisted by a closed
/// 3-form H through the extra term -i_X i_Y H.
GenSection dorfman(const FrameModel& model, const GenSection& x, const GenSection& y,
                   const DifferentialForm* twist = nullptr);

/// Dorfman bracket deformed by a closed 1-form phi:
/// adds phi(X) eta - phi(Y) xi + xi(Y) phi.
GenSection dorfman_one_form_twist(const FrameModel& model, const GenSection& x, const GenSection& y,
                                  const DifferentialForm& phi);

/// X + xi  ->  X + xi + i_X omega.
GenSection b_transform(const FrameModel& model, const DifferentialForm& omega, const GenSection& x);

/// Checks the twisted 3-form and returns it; throws ValidationError when the
/// form is not a closed homogeneous 3-form.
DifferentialForm make_twist(const FrameModel& model, const DifferentialForm& h);

struct CourantAxiomReport {
  /// x(<y,z>) - <[x,y],z> - <y,[x,z]>
  std::vector<FunctionElement> metric_residuals;
  /// [x,[y,z]] - [[x,y],z] - [y,[x,z]]
  std::vector<GenSection> leibniz_residuals;
  /// [x,y] + [y,x] - 2 d<x,y>
  std::vector<GenSection> symmetry_residuals;
  bool ok() const;
};

/// Verifies the three Courant algebroid axioms on all ordered triples of the
/// given sections.
CourantAxiomReport courant_axioms_check(const FrameModel& model, const std::vector<GenSection>& sections,
                                        const DifferentialForm* twist = nullptr);

/// Sections are linearly independent over the fraction field / at a point.
std::size_t section_rank(const std::vector<GenSection>& sections);
std::size_t section_rank_at(const std::vector<GenSection>& sections, const Point& p);

}  // namespace gencontact
