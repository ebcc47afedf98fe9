#include "gencontact/linear_solve.hpp"

#include <algorithm>

#include "gencontact/errors.hpp"

namespace gencontact {

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

Matrix Matrix::from_columns(const std::vector<Column>& cols, std::size_t rows) {
  Matrix m(rows, cols.size());
  for (std::size_t c = 0; c < cols.size(); ++c) {
    if (cols[c].size() != rows) throw Error("column length mismatch");
    for (std::size_t r = 0; r < rows; ++r) m(r, c) = cols[c][r];
  }
  return m;
}

Column Matrix::column(std::size_t c) const {
  Column out(rows_);
  for (std::size_t r = 0; r < rows_; ++r) out[r] = (*this)(r, c);
  return out;
}

Column Matrix::apply(const Column& v) const {
  if (v.size() != cols_) throw Error("matrix/vector size mismatch");
  Column out(rows_);
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = 0; c < cols_; ++c) {
      if (!(*this)(r, c).is_zero() && !v[c].is_zero()) out[r] += (*this)(r, c) * v[c];
    }
  }
  return out;
}

Matrix Matrix::operator*(const Matrix& o) const {
  if (cols_ != o.rows_) throw Error("matrix product size mismatch");
  Matrix out(rows_, o.cols_);
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t k = 0; k < cols_; ++k) {
      const auto& a = (*this)(r, k);
      if (a.is_zero()) continue;
      for (std::size_t c = 0; c < o.cols_; ++c) {
        if (!o(k, c).is_zero()) out(r, c) += a * o(k, c);
      }
    }
  }
  return out;
}

Matrix Matrix::operator+(const Matrix& o) const {
  Matrix out = *this;
  for (std::size_t i = 0; i < data_.size(); ++i) out.data_[i] += o.data_.at(i);
  return out;
}

Matrix Matrix::operator-(const Matrix& o) const {
  Matrix out = *this;
  for (std::size_t i = 0; i < data_.size(); ++i) out.data_[i] -= o.data_.at(i);
  return out;
}

Matrix Matrix::scaled(const FunctionElement& f) const {
  Matrix out = *this;
  for (auto& e : out.data_) e *= f;
  return out;
}

Matrix Matrix::transposed() const {
  Matrix out(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = 0; c < cols_; ++c) out(c, r) = (*this)(r, c);
  }
  return out;
}

Matrix Matrix::evaluate(const Point& p) const {
  Matrix out = *this;
  for (auto& e : out.data_) e = e.evaluate(p);
  return out;
}

bool Matrix::is_zero() const {
  return std::all_of(data_.begin(), data_.end(), [](const FunctionElement& e) { return e.is_zero(); });
}

bool operator==(const Matrix& a, const Matrix& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_) return false;
  for (std::size_t i = 0; i < a.data_.size(); ++i) {
    if (a.data_[i] != b.data_[i]) return false;
  }
  return true;
}

std::optional<FunctionElement> Fraction::as_element() const { return numerator.divide_exact(denominator); }

namespace {

struct Reduced {
  Matrix m;
  std::vector<std::size_t> pivot_cols;  // pivot column of row r, r < pivot_cols.size()
};

// Cost of using an entry as pivot: units first, then small elements.
std::pair<int, std::size_t> pivot_cost(const FunctionElement& e) {
  if (e.is_constant()) return {0, 0};
  if (e.is_unit()) return {1, e.term_count()};
  return {2, e.term_count() * 16 + e.degree()};
}

Reduced reduce(Matrix m, std::size_t pivot_limit) {
  Reduced out;
  std::size_t cur = 0;
  const std::size_t rows = m.rows();
  const std::size_t cols = m.cols();
  for (std::size_t c = 0; c < pivot_limit && cur < rows; ++c) {
    std::size_t best = rows;
    std::pair<int, std::size_t> best_cost{3, 0};
    for (std::size_t r = cur; r < rows; ++r) {
      if (m(r, c).is_zero()) continue;
      auto cost = pivot_cost(m(r, c));
      if (best == rows || cost < best_cost) {
        best = r;
        best_cost = cost;
      }
    }
    if (best == rows) continue;
    if (best != cur) {
      for (std::size_t k = 0; k < cols; ++k) std::swap(m(best, k), m(cur, k));
    }
    if (auto inv = m(cur, c).try_inverse()) {
      for (std::size_t k = 0; k < cols; ++k) {
        if (!m(cur, k).is_zero()) m(cur, k) *= *inv;
      }
    }
    const FunctionElement pivot = m(cur, c);
    const bool unit_pivot = pivot.is_constant() && pivot.constant_value().is_one();
    for (std::size_t r = 0; r < rows; ++r) {
      if (r == cur || m(r, c).is_zero()) continue;
      const FunctionElement factor = m(r, c);
      for (std::size_t k = 0; k < cols; ++k) {
        if (unit_pivot) {
          if (!m(cur, k).is_zero()) m(r, k) -= factor * m(cur, k);
        } else {
          FunctionElement v = m(r, k) * pivot;
          if (!m(cur, k).is_zero()) v -= factor * m(cur, k);
          m(r, k) = std::move(v);
        }
      }
    }
    out.pivot_cols.push_back(c);
    ++cur;
  }
  out.m = std::move(m);
  return out;
}

}  // namespace

SolveResult solve_linear(const Matrix& a, const Column& b) {
  if (b.size() != a.rows()) throw Error("right-hand side size mismatch");
  const std::size_t n = a.cols();
  Matrix aug(a.rows(), n + 1);
  for (std::size_t r = 0; r < a.rows(); ++r) {
    for (std::size_t c = 0; c < n; ++c) aug(r, c) = a(r, c);
    aug(r, n) = b[r];
  }
  Reduced red = reduce(std::move(aug), n);
  for (std::size_t r = red.pivot_cols.size(); r < a.rows(); ++r) {
    if (!red.m(r, n).is_zero()) return Inconsistency{r, red.m(r, n)};
  }
  LinearSolution sol;
  sol.values.resize(n);
  for (auto& v : sol.values) v.numerator = FunctionElement(0);
  for (std::size_t r = 0; r < red.pivot_cols.size(); ++r) {
    const std::size_t c = red.pivot_cols[r];
    const FunctionElement& p = red.m(r, c);
    const FunctionElement& rhs = red.m(r, n);
    if (auto q = rhs.divide_exact(p)) {
      sol.values[c] = {*q, FunctionElement(1)};
    } else {
      sol.values[c] = {rhs, p};
    }
  }
  return sol;
}

std::size_t rank(const Matrix& a) { return reduce(a, a.cols()).pivot_cols.size(); }

std::vector<std::size_t> independent_columns(const Matrix& a) { return reduce(a, a.cols()).pivot_cols; }

std::vector<Column> kernel_basis(const Matrix& a) {
  const std::size_t n = a.cols();
  Reduced red = reduce(a, n);
  std::vector<bool> is_pivot(n, false);
  for (auto c : red.pivot_cols) is_pivot[c] = true;
  std::vector<Column> basis;
  for (std::size_t f = 0; f < n; ++f) {
    if (is_pivot[f]) continue;
    // x_f = L, x_{c_r} = -a_{r,f} * L / p_r with L the product of the pivots involved.
    FunctionElement lcm(1);
    for (std::size_t r = 0; r < red.pivot_cols.size(); ++r) {
      const auto& p = red.m(r, red.pivot_cols[r]);
      if (red.m(r, f).is_zero() || p.is_unit()) continue;
      if (auto q = red.m(r, f).divide_exact(p)) continue;
      if (lcm.divide_exact(p)) continue;
      lcm *= p;
    }
    Column v(n);
    v[f] = lcm;
    for (std::size_t r = 0; r < red.pivot_cols.size(); ++r) {
      if (red.m(r, f).is_zero()) continue;
      const auto& p = red.m(r, red.pivot_cols[r]);
      FunctionElement num = -(red.m(r, f) * lcm);
      auto q = num.divide_exact(p);
      if (!q) throw Error("kernel denominator clearing failed");
      v[red.pivot_cols[r]] = *q;
    }
    basis.push_back(std::move(v));
  }
  return basis;
}

}  // namespace gencontact
