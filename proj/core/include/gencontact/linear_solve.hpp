#pragma once

#include <optional>
#include <variant>
#include <vector>

#include "gencontact/function_element.hpp"

namespace gencontact {

using Column = std::vector<FunctionElement>;

/// Dense matrix over the scalar ring, row-major.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  static Matrix identity(std::size_t n);
  static Matrix from_columns(const std::vector<Column>& cols, std::size_t rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  FunctionElement& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const FunctionElement& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  Column column(std::size_t c) const;
  Column apply(const Column& v) const;
  Matrix operator*(const Matrix& o) const;
  Matrix operator+(const Matrix& o) const;
  Matrix operator-(const Matrix& o) const;
  Matrix scaled(const FunctionElement& f) const;
  Matrix transposed() const;
  Matrix evaluate(const Point& p) const;
  bool is_zero() const;
  friend bool operator==(const Matrix& a, const Matrix& b);

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<FunctionElement> data_;
};

/// x = numerator / denominator.
struct Fraction {
  FunctionElement numerator;
  FunctionElement denominator{1};
  /// Exact polynomial value when the denominator divides the numerator.
  std::optional<FunctionElement> as_element() const;
};

struct LinearSolution {
  std::vector<Fraction> values;
};

/// Row of the reduced system whose left side vanished while the right side did
/// not. `row` indexes the reduced system, `residual` is its right side.
struct Inconsistency {
  std::size_t row = 0;
  FunctionElement residual;
};

using SolveResult = std::variant<LinearSolution, Inconsistency>;

/// Solves A x = b over the fraction field of the scalar ring. Free unknowns are
/// set to zero.
SolveResult solve_linear(const Matrix& a, const Column& b);

/// Rank over the fraction field.
std::size_t rank(const Matrix& a);

/// Basis of the kernel over the fraction field with denominators cleared.
std::vector<Column> kernel_basis(const Matrix& a);

/// Indices of a maximal set of columns independent over the fraction field,
/// chosen greedily left to right.
std::vector<std::size_t> independent_columns(const Matrix& a);

}  // namespace gencontact
