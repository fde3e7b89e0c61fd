#pragma once

// Exact dense linear algebra over any field type K providing + - * /, unary -,
// construction from int and a free `is_zero(const K&)`.

#include <algorithm>
#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "twcurve/errors.hpp"

namespace twc {

template <class K>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, K(0)) {}
  Matrix(std::size_t rows, std::size_t cols, std::vector<K> data)
      : rows_(rows), cols_(cols), data_(std::move(data)) {
    if (data_.size() != rows * cols) throw InvalidInput("matrix data size mismatch");
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  K& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const K& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  void swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t c = 0; c < cols_; ++c) std::swap((*this)(a, c), (*this)(b, c));
  }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<K> data_;
};

template <class K>
std::vector<K> multiply(const Matrix<K>& a, const std::vector<K>& x) {
  std::vector<K> out(a.rows(), K(0));
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (std::size_t c = 0; c < a.cols(); ++c)
      if (!is_zero(a(r, c)) && !is_zero(x[c])) out[r] += a(r, c) * x[c];
  return out;
}

/// Reduced row echelon form. Pivots are the first nonzero entry in column order.
template <class K>
struct EchelonForm {
  Matrix<K> reduced;
  std::vector<std::size_t> pivot_columns;
};

template <class K>
EchelonForm<K> row_reduce(Matrix<K> m, std::size_t pivot_limit = static_cast<std::size_t>(-1)) {
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  const std::size_t limit = std::min(pivot_limit, m.cols());
  for (std::size_t col = 0; col < limit && row < m.rows(); ++col) {
    std::size_t p = row;
    while (p < m.rows() && is_zero(m(p, col))) ++p;
    if (p == m.rows()) continue;
    m.swap_rows(p, row);
    K inv = K(1) / m(row, col);
    for (std::size_t c = col; c < m.cols(); ++c)
      if (!is_zero(m(row, c))) m(row, c) = m(row, c) * inv;
    for (std::size_t r = 0; r < m.rows(); ++r) {
      if (r == row || is_zero(m(r, col))) continue;
      K f = m(r, col);
      for (std::size_t c = col; c < m.cols(); ++c)
        if (!is_zero(m(row, c))) m(r, c) = m(r, c) - f * m(row, c);
    }
    pivots.push_back(col);
    ++row;
  }
  return {std::move(m), std::move(pivots)};
}

template <class K>
std::size_t rank(const Matrix<K>& m) {
  return row_reduce(m).pivot_columns.size();
}

/// Basis of the right null space, one vector per free column (free column entry 1).
template <class K>
std::vector<std::vector<K>> kernel_basis(const Matrix<K>& m) {
  auto [rref, pivots] = row_reduce(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto c : pivots) is_pivot[c] = true;
  std::vector<std::vector<K>> basis;
  for (std::size_t f = 0; f < m.cols(); ++f) {
    if (is_pivot[f]) continue;
    std::vector<K> v(m.cols(), K(0));
    v[f] = K(1);
    for (std::size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = -rref(i, f);
    basis.push_back(std::move(v));
  }
  return basis;
}

/// Solution set of A x = b: a particular solution plus a kernel basis, or inconsistent.
template <class K>
struct AffineSolutionSet {
  std::optional<std::vector<K>> particular;  // nullopt: inconsistent
  std::vector<std::vector<K>> kernel;

  bool consistent() const { return particular.has_value(); }
};

template <class K>
AffineSolutionSet<K> solve_linear(const Matrix<K>& a, const std::vector<K>& b) {
  if (b.size() != a.rows()) throw InvalidInput("right hand side length mismatch");
  Matrix<K> aug(a.rows(), a.cols() + 1);
  for (std::size_t r = 0; r < a.rows(); ++r) {
    for (std::size_t c = 0; c < a.cols(); ++c) aug(r, c) = a(r, c);
    aug(r, a.cols()) = b[r];
  }
  auto [rref, pivots] = row_reduce(std::move(aug), a.cols());
  AffineSolutionSet<K> out;
  for (std::size_t r = pivots.size(); r < a.rows(); ++r)
    if (!is_zero(rref(r, a.cols()))) return out;
  std::vector<K> x(a.cols(), K(0));
  for (std::size_t i = 0; i < pivots.size(); ++i) x[pivots[i]] = rref(i, a.cols());
  out.particular = std::move(x);
  std::vector<bool> is_pivot(a.cols(), false);
  for (auto c : pivots) is_pivot[c] = true;
  for (std::size_t f = 0; f < a.cols(); ++f) {
    if (is_pivot[f]) continue;
    std::vector<K> v(a.cols(), K(0));
    v[f] = K(1);
    for (std::size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = -rref(i, f);
    out.kernel.push_back(std::move(v));
  }
  return out;
}

}  // namespace twc
