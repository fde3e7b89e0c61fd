#pragma once

/**
 * Quotients of polynomials in the plane coordinates (x, y).
 *
 * The stored form has no common monomial factor and no common rational
 * content, and the denominator's lexicographically leading coefficient is 1.
 * No polynomial gcd beyond that is attempted, so equal functions can have
 * different representations; compare values with is_zero_mod_curve.
 */

#include <algorithm>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "twcurve/errors.hpp"
#include "twcurve/multipoly.hpp"

namespace twc {

class RationalFunction {
 public:
  RationalFunction() : num_(2), den_(MultiPoly::constant(2, FieldElement(1))) {}
  RationalFunction(MultiPoly numerator)  // NOLINT(google-explicit-constructor)
      : RationalFunction(std::move(numerator), MultiPoly::constant(2, FieldElement(1))) {}
  RationalFunction(MultiPoly numerator, MultiPoly denominator)
      : num_(std::move(numerator)), den_(std::move(denominator)) {
    if (num_.nvars() != 2 || den_.nvars() != 2) throw InvalidInput("rational functions live in (x, y)");
    if (den_.is_zero()) throw InvalidInput("rational function with zero denominator");
    normalize();
  }

  static RationalFunction constant(const FieldElement& c) { return RationalFunction(MultiPoly::constant(2, c)); }
  static RationalFunction x() { return RationalFunction(MultiPoly::variable(2, 0)); }
  static RationalFunction y() { return RationalFunction(MultiPoly::variable(2, 1)); }

  const MultiPoly& numerator() const { return num_; }
  const MultiPoly& denominator() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }
  bool is_polynomial() const { return den_.is_constant(); }

  RationalFunction operator-() const { return RationalFunction(-num_, den_, Normalized{}); }

  friend RationalFunction operator+(const RationalFunction& a, const RationalFunction& b) {
    return a.combine(b, false);
  }
  friend RationalFunction operator-(const RationalFunction& a, const RationalFunction& b) {
    return a.combine(b, true);
  }
  friend RationalFunction operator*(const RationalFunction& a, const RationalFunction& b) {
    if (a.den_ == b.num_ && !a.den_.is_constant()) return RationalFunction(a.num_, b.den_);
    if (b.den_ == a.num_ && !b.den_.is_constant()) return RationalFunction(b.num_, a.den_);
    return RationalFunction(a.num_ * b.num_, a.den_ * b.den_);
  }
  friend RationalFunction operator/(const RationalFunction& a, const RationalFunction& b) {
    if (b.is_zero()) throw InvalidInput("division by the zero rational function");
    return a * RationalFunction(b.den_, b.num_);
  }
  friend RationalFunction operator*(const FieldElement& s, const RationalFunction& a) {
    return RationalFunction(s * a.num_, a.den_);
  }

  RationalFunction pow(unsigned e) const { return RationalFunction(num_.pow(e), den_.pow(e)); }

  /// Literal equality of the normalized representations.
  friend bool operator==(const RationalFunction& a, const RationalFunction& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }

  /// Parser-compatible text such as "(y^2 - 1)/(x*y)".
  std::string to_string() const {
    static const std::string names[] = {"x", "y"};
    std::string n = twc::to_string(num_, names);
    if (den_.is_constant() && den_.constant_value()->is_one()) return n;
    std::string d = twc::to_string(den_, names);
    bool simple_num = num_.size() <= 1 && (num_.is_zero() || num_.terms().begin()->second.is_rational());
    bool simple_den = false;
    if (den_.size() == 1 && den_.terms().begin()->second.is_one()) {
      const Monomial& m = den_.terms().begin()->first;
      simple_den = (m[0] == 0) != (m[1] == 0);
    }
    return (simple_num ? n : "(" + n + ")") + "/" + (simple_den ? d : "(" + d + ")");
  }

 private:
  struct Normalized {};
  RationalFunction(MultiPoly n, MultiPoly d, Normalized) : num_(std::move(n)), den_(std::move(d)) {}

  RationalFunction combine(const RationalFunction& b, bool subtract) const {
    const RationalFunction& a = *this;
    MultiPoly bn = subtract ? -b.num_ : b.num_;
    if (a.den_ == b.den_) return RationalFunction(a.num_ + bn, a.den_);
    if (auto q = divide_exact(a.den_, b.den_)) return RationalFunction(a.num_ + bn * *q, a.den_);
    if (auto q = divide_exact(b.den_, a.den_)) return RationalFunction(a.num_ * *q + bn, b.den_);
    return RationalFunction(a.num_ * b.den_ + bn * a.den_, a.den_ * b.den_);
  }

  void normalize() {
    if (num_.is_zero()) {
      den_ = MultiPoly::constant(2, FieldElement(1));
      return;
    }
    // Monomial factor common to numerator and denominator.
    Monomial gn = num_.monomial_content(), gd = den_.monomial_content(), g(2);
    for (std::size_t i = 0; i < 2; ++i) g.exps[i] = std::min(gn[i], gd[i]);
    if (!g.is_one()) {
      num_ = *divide_exact(num_, MultiPoly::term(g, FieldElement(1)));
      den_ = *divide_exact(den_, MultiPoly::term(g, FieldElement(1)));
    }
    if (auto q = divide_exact(num_, den_); q && !den_.is_constant()) {
      num_ = std::move(*q);
      den_ = MultiPoly::constant(2, FieldElement(1));
    }
    FieldElement lc = den_.leading_term().second;
    if (!lc.is_one()) {
      FieldElement inv = lc.inverse();
      num_ = inv * num_;
      den_ = inv * den_;
    }
  }

  MultiPoly num_, den_;
};

/// P(v_1, ..., v_n) as numerator and denominator over the common denominator
/// prod_i den(v_i)^{deg_i P}, without normalization.
inline std::pair<MultiPoly, MultiPoly> cleared_composition(const MultiPoly& p, std::span<const RationalFunction> values) {
  const std::size_t n = p.nvars();
  if (values.size() < n) throw InvalidInput("composition needs one value per variable");
  std::vector<int> maxdeg(n, 0);
  for (std::size_t i = 0; i < n; ++i) maxdeg[i] = std::max(0, p.degree_in(i));
  std::vector<std::vector<MultiPoly>> npow(n), dpow(n);
  auto power = [](std::vector<MultiPoly>& cache, const MultiPoly& base, int e) -> const MultiPoly& {
    if (cache.empty()) cache.push_back(MultiPoly::constant(2, FieldElement(1)));
    while (static_cast<int>(cache.size()) <= e) cache.push_back(cache.back() * base);
    return cache[static_cast<std::size_t>(e)];
  };
  MultiPoly num(2);
  for (const auto& [m, c] : p.terms()) {
    MultiPoly t = MultiPoly::constant(2, c);
    for (std::size_t i = 0; i < n; ++i) {
      if (maxdeg[i] == 0) continue;
      if (m[i] > 0) t = t * power(npow[i], values[i].numerator(), m[i]);
      if (maxdeg[i] - m[i] > 0) t = t * power(dpow[i], values[i].denominator(), maxdeg[i] - m[i]);
    }
    num += t;
  }
  MultiPoly den = MultiPoly::constant(2, FieldElement(1));
  for (std::size_t i = 0; i < n; ++i)
    if (maxdeg[i] > 0) den = den * power(dpow[i], values[i].denominator(), maxdeg[i]);
  return {std::move(num), std::move(den)};
}

/// P(v_1, ..., v_n) as a rational function.
inline RationalFunction compose(const MultiPoly& p, std::span<const RationalFunction> values) {
  auto [n, d] = cleared_composition(p, values);
  return RationalFunction(std::move(n), std::move(d));
}

}  // namespace twc
