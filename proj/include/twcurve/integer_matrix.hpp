#pragma once

#include <algorithm>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "twcurve/errors.hpp"
#include "twcurve/rational.hpp"

namespace twc {

class IntegerMatrix {
 public:
  IntegerMatrix() = default;
  IntegerMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), a_(rows * cols, Integer(0)) {}
  IntegerMatrix(std::size_t rows, std::size_t cols, const std::vector<long>& entries) : IntegerMatrix(rows, cols) {
    if (entries.size() != rows * cols) throw InvalidInput("matrix data size mismatch");
    for (std::size_t i = 0; i < entries.size(); ++i) a_[i] = entries[i];
  }

  static IntegerMatrix identity(std::size_t n) {
    IntegerMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  Integer& operator()(std::size_t r, std::size_t c) { return a_[r * cols_ + c]; }
  const Integer& operator()(std::size_t r, std::size_t c) const { return a_[r * cols_ + c]; }

  bool is_diagonal() const {
    for (std::size_t r = 0; r < rows_; ++r)
      for (std::size_t c = 0; c < cols_; ++c)
        if (r != c && (*this)(r, c) != 0) return false;
    return true;
  }

  friend IntegerMatrix operator*(const IntegerMatrix& x, const IntegerMatrix& y) {
    if (x.cols_ != y.rows_) throw InvalidInput("matrix dimension mismatch");
    IntegerMatrix out(x.rows_, y.cols_);
    for (std::size_t i = 0; i < x.rows_; ++i)
      for (std::size_t k = 0; k < x.cols_; ++k) {
        if (x(i, k) == 0) continue;
        for (std::size_t j = 0; j < y.cols_; ++j) out(i, j) += x(i, k) * y(k, j);
      }
    return out;
  }
  friend bool operator==(const IntegerMatrix& x, const IntegerMatrix& y) {
    return x.rows_ == y.rows_ && x.cols_ == y.cols_ && x.a_ == y.a_;
  }

  void swap_rows(std::size_t i, std::size_t j) {
    for (std::size_t c = 0; c < cols_; ++c) std::swap((*this)(i, c), (*this)(j, c));
  }
  void swap_cols(std::size_t i, std::size_t j) {
    for (std::size_t r = 0; r < rows_; ++r) std::swap((*this)(r, i), (*this)(r, j));
  }
  /// row i += f * row j
  void add_row(std::size_t i, std::size_t j, const Integer& f) {
    for (std::size_t c = 0; c < cols_; ++c) (*this)(i, c) += f * (*this)(j, c);
  }
  /// col i += f * col j
  void add_col(std::size_t i, std::size_t j, const Integer& f) {
    for (std::size_t r = 0; r < rows_; ++r) (*this)(r, i) += f * (*this)(r, j);
  }
  void negate_row(std::size_t i) {
    for (std::size_t c = 0; c < cols_; ++c) (*this)(i, c) = -(*this)(i, c);
  }

  std::string to_string() const {
    std::string s = "[";
    for (std::size_t r = 0; r < rows_; ++r) {
      s += r ? ", [" : "[";
      for (std::size_t c = 0; c < cols_; ++c) s += (c ? ", " : "") + (*this)(r, c).get_str();
      s += "]";
    }
    return s + "]";
  }

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<Integer> a_;
};

/// Fraction-free (Bareiss) determinant of a square matrix.
inline Integer determinant(IntegerMatrix m) {
  if (m.rows() != m.cols()) throw InvalidInput("determinant of a non-square matrix");
  const std::size_t n = m.rows();
  if (n == 0) return 1;
  Integer prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m(k, k) == 0) {
      std::size_t p = k + 1;
      while (p < n && m(p, k) == 0) ++p;
      if (p == n) return 0;
      m.swap_rows(k, p);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) {
        Integer t = m(i, j) * m(k, k) - m(i, k) * m(k, j);
        mpz_divexact(t.get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
        m(i, j) = t;
      }
    prev = m(k, k);
  }
  return sign * m(n - 1, n - 1);
}

/// U * M * V = D with U, V unimodular, D diagonal, d_i >= 0 and d_i | d_{i+1}.
struct SmithForm {
  IntegerMatrix U, D, V;
};

inline SmithForm smith_normal_form(const IntegerMatrix& m) {
  const std::size_t rows = m.rows(), cols = m.cols();
  IntegerMatrix d = m, u = IntegerMatrix::identity(rows), v = IntegerMatrix::identity(cols);
  const std::size_t n = std::min(rows, cols);

  for (std::size_t t = 0; t < n; ++t) {
    for (;;) {
      // Smallest nonzero entry of the trailing block becomes the pivot.
      std::size_t pr = rows, pc = cols;
      for (std::size_t r = t; r < rows; ++r)
        for (std::size_t c = t; c < cols; ++c)
          if (d(r, c) != 0 && (pr == rows || abs(d(r, c)) < abs(d(pr, pc)))) {
            pr = r;
            pc = c;
          }
      if (pr == rows) break;
      if (pr != t) {
        d.swap_rows(pr, t);
        u.swap_rows(pr, t);
      }
      if (pc != t) {
        d.swap_cols(pc, t);
        v.swap_cols(pc, t);
      }
      bool clean = true;
      for (std::size_t r = t + 1; r < rows; ++r) {
        if (d(r, t) == 0) continue;
        Integer q;
        mpz_fdiv_q(q.get_mpz_t(), d(r, t).get_mpz_t(), d(t, t).get_mpz_t());
        d.add_row(r, t, -q);
        u.add_row(r, t, -q);
        if (d(r, t) != 0) clean = false;
      }
      for (std::size_t c = t + 1; c < cols; ++c) {
        if (d(t, c) == 0) continue;
        Integer q;
        mpz_fdiv_q(q.get_mpz_t(), d(t, c).get_mpz_t(), d(t, t).get_mpz_t());
        d.add_col(c, t, -q);
        v.add_col(c, t, -q);
        if (d(t, c) != 0) clean = false;
      }
      if (!clean) continue;
      // Divisibility: fold any row whose entries the pivot does not divide.
      std::size_t bad = rows;
      for (std::size_t r = t + 1; r < rows && bad == rows; ++r)
        for (std::size_t c = t + 1; c < cols; ++c)
          if (d(r, c) % d(t, t) != 0) {
            bad = r;
            break;
          }
      if (bad == rows) break;
      d.add_row(t, bad, 1);
      u.add_row(t, bad, 1);
    }
    if (d(t, t) < 0) {
      d.negate_row(t);
      u.negate_row(t);
    }
  }
  return {std::move(u), std::move(d), std::move(v)};
}

}  // namespace twc
