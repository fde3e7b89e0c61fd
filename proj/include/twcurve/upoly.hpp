#pragma once

// Dense univariate polynomials over Q, coefficients stored low degree first.
// Used for minimal polynomials, inversion in Q(a) and rational root finding.

#include <algorithm>
#include <string>
#include <utility>
#include <vector>

#include "twcurve/rational.hpp"

namespace twc {

class QPoly {
 public:
  QPoly() = default;
  explicit QPoly(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { trim(); }

  static QPoly constant(const Rational& c) { return QPoly({c}); }
  static QPoly x() { return QPoly({Rational(0), Rational(1)}); }

  int degree() const { return static_cast<int>(c_.size()) - 1; }  // -1 for zero
  bool is_zero() const { return c_.empty(); }
  const std::vector<Rational>& coeffs() const { return c_; }
  Rational operator[](int i) const {
    return i >= 0 && i < static_cast<int>(c_.size()) ? c_[i] : Rational(0);
  }
  Rational leading() const { return c_.empty() ? Rational(0) : c_.back(); }

  Rational eval(const Rational& t) const {
    Rational acc = 0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * t + *it;
    return acc;
  }

  QPoly derivative() const {
    std::vector<Rational> d;
    for (std::size_t i = 1; i < c_.size(); ++i) d.push_back(c_[i] * static_cast<long>(i));
    return QPoly(std::move(d));
  }

  QPoly monic() const {
    if (c_.empty()) return *this;
    std::vector<Rational> m = c_;
    Rational lc = c_.back();
    for (auto& v : m) v /= lc;
    return QPoly(std::move(m));
  }

  /// Scales to integer coefficients with gcd 1 and positive leading coefficient.
  std::vector<Integer> primitive_integer() const {
    Integer den = 1;
    for (const auto& v : c_) den = lcm(den, v.get_den());
    std::vector<Integer> z;
    Integer g = 0;
    for (const auto& v : c_) {
      Integer t = v.get_num() * (den / v.get_den());
      z.push_back(t);
      g = gcd(g, t);
    }
    if (g == 0) return z;
    if (z.back() < 0) g = -g;
    for (auto& t : z) t /= g;
    return z;
  }

  friend QPoly operator+(const QPoly& a, const QPoly& b) {
    std::vector<Rational> r(std::max(a.c_.size(), b.c_.size()));
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = a[static_cast<int>(i)] + b[static_cast<int>(i)];
    return QPoly(std::move(r));
  }
  friend QPoly operator-(const QPoly& a, const QPoly& b) {
    std::vector<Rational> r(std::max(a.c_.size(), b.c_.size()));
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = a[static_cast<int>(i)] - b[static_cast<int>(i)];
    return QPoly(std::move(r));
  }
  friend QPoly operator*(const QPoly& a, const QPoly& b) {
    if (a.is_zero() || b.is_zero()) return QPoly();
    std::vector<Rational> r(a.c_.size() + b.c_.size() - 1);
    for (std::size_t i = 0; i < a.c_.size(); ++i)
      for (std::size_t j = 0; j < b.c_.size(); ++j) r[i + j] += a.c_[i] * b.c_[j];
    return QPoly(std::move(r));
  }
  friend QPoly operator*(const Rational& s, const QPoly& a) {
    std::vector<Rational> r = a.c_;
    for (auto& v : r) v *= s;
    return QPoly(std::move(r));
  }
  friend bool operator==(const QPoly& a, const QPoly& b) { return a.c_ == b.c_; }

  std::string to_string(const std::string& var = "z") const {
    if (c_.empty()) return "0";
    std::string out;
    for (int i = degree(); i >= 0; --i) {
      const Rational& v = c_[i];
      if (twc::is_zero(v)) continue;
      bool neg = sgn(v) < 0;
      Rational mag = abs(v);
      if (out.empty())
        out += neg ? "-" : "";
      else
        out += neg ? " - " : " + ";
      bool unit = mag == 1;
      if (i == 0 || !unit) out += mag.get_str();
      if (i > 0) {
        if (!unit) out += "*";
        out += var;
        if (i > 1) out += "^" + std::to_string(i);
      }
    }
    return out;
  }

 private:
  void trim() {
    while (!c_.empty() && twc::is_zero(c_.back())) c_.pop_back();
  }
  std::vector<Rational> c_;
};

struct QPolyDivision {
  QPoly quotient, remainder;
};

inline QPolyDivision divmod(const QPoly& a, const QPoly& b) {
  if (b.is_zero()) throw InvalidInput("polynomial division by zero");
  std::vector<Rational> rem = a.coeffs();
  int db = b.degree();
  std::vector<Rational> quo(std::max(0, a.degree() - db + 1));
  for (int i = a.degree(); i >= db; --i) {
    Rational f = rem[i] / b.leading();
    quo[i - db] = f;
    if (is_zero(f)) continue;
    for (int k = 0; k <= db; ++k) rem[i - db + k] -= f * b[k];
  }
  rem.resize(std::max(0, db));
  return {QPoly(std::move(quo)), QPoly(std::move(rem))};
}

/// Monic gcd.
inline QPoly gcd(QPoly a, QPoly b) {
  while (!b.is_zero()) {
    QPoly r = divmod(a, b).remainder;
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

/// g = s*a + t*b with g the monic gcd.
struct QPolyXgcd {
  QPoly g, s, t;
};

inline QPolyXgcd xgcd(const QPoly& a, const QPoly& b) {
  QPoly r0 = a, r1 = b, s0 = QPoly::constant(1), s1, t0, t1 = QPoly::constant(1);
  while (!r1.is_zero()) {
    auto [q, r] = divmod(r0, r1);
    QPoly s2 = s0 - q * s1, t2 = t0 - q * t1;
    r0 = std::move(r1);
    r1 = std::move(r);
    s0 = std::move(s1);
    s1 = std::move(s2);
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  if (r0.is_zero()) return {r0, s0, t0};
  Rational lc = r0.leading();
  Rational inv = 1 / lc;
  return {inv * r0, inv * s0, inv * t0};
}

/// Distinct rational roots, in canonical order (see canonical_less).
inline std::vector<Rational> rational_roots(const QPoly& p) {
  std::vector<Rational> roots;
  if (p.degree() <= 0) return roots;
  std::vector<Integer> z = QPoly(p.coeffs()).primitive_integer();
  std::size_t low = 0;
  while (low < z.size() && z[low] == 0) ++low;
  if (low > 0) roots.emplace_back(0);
  if (low + 1 >= z.size()) return roots;
  for (const Integer& num : divisors(z[low])) {
    for (const Integer& den : divisors(z.back())) {
      if (gcd(num, den) != 1) continue;
      for (int sign : {1, -1}) {
        Rational cand = make_rational(num * sign, den);
        if (is_zero(p.eval(cand))) roots.push_back(cand);
      }
    }
  }
  std::sort(roots.begin(), roots.end(), canonical_less);
  return roots;
}

}  // namespace twc
