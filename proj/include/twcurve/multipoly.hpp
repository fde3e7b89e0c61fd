#pragma once

/**
 * Sparse multivariate polynomials over FieldElement.
 *
 * Terms live in an ordered map keyed by exponent vectors (lexicographic with
 * x_1 most significant), so iteration order and printing are deterministic.
 * Zero coefficients are never stored.
 */

#include <algorithm>
#include <compare>
#include <cstddef>
#include <map>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "twcurve/errors.hpp"
#include "twcurve/number_field.hpp"

namespace twc {

/// Exponent vector; one entry per variable.
struct Monomial {
  std::vector<int> exps;

  Monomial() = default;
  explicit Monomial(std::size_t nvars) : exps(nvars, 0) {}
  Monomial(std::initializer_list<int> e) : exps(e) {}
  explicit Monomial(std::vector<int> e) : exps(std::move(e)) {}

  static Monomial unit(std::size_t nvars, std::size_t var, int power = 1) {
    Monomial m(nvars);
    m.exps[var] = power;
    return m;
  }

  std::size_t nvars() const { return exps.size(); }
  int operator[](std::size_t i) const { return i < exps.size() ? exps[i] : 0; }
  int& operator[](std::size_t i) { return exps[i]; }

  int total_degree() const { return std::accumulate(exps.begin(), exps.end(), 0); }
  long weighted_degree(std::span<const int> weights) const {
    long d = 0;
    for (std::size_t i = 0; i < exps.size(); ++i) d += static_cast<long>(exps[i]) * weights[i];
    return d;
  }
  bool involves(std::size_t var) const { return (*this)[var] > 0; }
  bool is_one() const {
    return std::all_of(exps.begin(), exps.end(), [](int e) { return e == 0; });
  }
  bool divides(const Monomial& o) const {
    for (std::size_t i = 0; i < exps.size(); ++i)
      if (exps[i] > o[i]) return false;
    return true;
  }
  Monomial resized(std::size_t n) const {
    Monomial m(n);
    for (std::size_t i = 0; i < std::min(n, exps.size()); ++i) m.exps[i] = exps[i];
    for (std::size_t i = n; i < exps.size(); ++i)
      if (exps[i] != 0) throw InvalidInput("cannot drop a variable that occurs in a monomial");
    return m;
  }

  friend Monomial operator*(const Monomial& a, const Monomial& b) {
    Monomial m(std::max(a.nvars(), b.nvars()));
    for (std::size_t i = 0; i < m.nvars(); ++i) m.exps[i] = a[i] + b[i];
    return m;
  }
  /// Requires b | a.
  friend Monomial operator/(const Monomial& a, const Monomial& b) {
    Monomial m(std::max(a.nvars(), b.nvars()));
    for (std::size_t i = 0; i < m.nvars(); ++i) {
      m.exps[i] = a[i] - b[i];
      if (m.exps[i] < 0) throw InvalidInput("monomial division is not exact");
    }
    return m;
  }
  friend auto operator<=>(const Monomial&, const Monomial&) = default;
  friend bool operator==(const Monomial&, const Monomial&) = default;
};

/// Variable names x1, x2, ..., xn.
inline std::vector<std::string> indexed_names(std::size_t n, const std::string& stem = "x") {
  std::vector<std::string> names;
  for (std::size_t i = 0; i < n; ++i) names.push_back(stem + std::to_string(i + 1));
  return names;
}

inline std::string to_string(const Monomial& m, std::span<const std::string> names) {
  std::string out;
  for (std::size_t i = 0; i < m.nvars(); ++i) {
    if (m[i] == 0) continue;
    if (!out.empty()) out += "*";
    out += names[i];
    if (m[i] > 1) out += "^" + std::to_string(m[i]);
  }
  return out.empty() ? "1" : out;
}

class MultiPoly {
 public:
  using Terms = std::map<Monomial, FieldElement>;

  explicit MultiPoly(std::size_t nvars = 0) : nvars_(nvars) {}

  static MultiPoly constant(std::size_t nvars, const FieldElement& c) {
    MultiPoly p(nvars);
    p.add_term(Monomial(nvars), c);
    return p;
  }
  static MultiPoly variable(std::size_t nvars, std::size_t var) {
    return term(Monomial::unit(nvars, var), FieldElement(1));
  }
  static MultiPoly term(const Monomial& m, const FieldElement& c) {
    MultiPoly p(m.nvars());
    p.add_term(m, c);
    return p;
  }

  std::size_t nvars() const { return nvars_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  const Terms& terms() const { return terms_; }

  FieldElement coefficient(const Monomial& m) const {
    auto it = terms_.find(m.nvars() == nvars_ ? m : m.resized(nvars_));
    return it == terms_.end() ? FieldElement(0) : it->second;
  }

  void add_term(const Monomial& m, const FieldElement& c) {
    if (c.is_zero()) return;
    if (m.nvars() != nvars_) throw InvalidInput("monomial arity does not match polynomial");
    auto [it, inserted] = terms_.try_emplace(m, c);
    if (!inserted) {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

  std::optional<FieldElement> constant_value() const {
    if (terms_.empty()) return FieldElement(0);
    if (terms_.size() == 1 && terms_.begin()->first.is_one()) return terms_.begin()->second;
    return std::nullopt;
  }
  bool is_constant() const { return constant_value().has_value(); }

  bool is_rational() const {
    return std::all_of(terms_.begin(), terms_.end(), [](const auto& t) { return t.second.is_rational(); });
  }

  int degree_in(std::size_t var) const {
    int d = -1;
    for (const auto& [m, c] : terms_) d = std::max(d, m[var]);
    return d;
  }
  int min_degree_in(std::size_t var) const {
    int d = -1;
    for (const auto& [m, c] : terms_) d = d < 0 ? m[var] : std::min(d, m[var]);
    return d;
  }
  int total_degree() const {
    int d = -1;
    for (const auto& [m, c] : terms_) d = std::max(d, m.total_degree());
    return d;
  }
  /// Maximal weighted degree of a term; -1 for the zero polynomial.
  long weighted_degree(std::span<const int> weights) const {
    long d = -1;
    for (const auto& [m, c] : terms_) d = std::max(d, m.weighted_degree(weights));
    return d;
  }
  bool involves(std::size_t var) const { return degree_in(var) > 0; }

  /// Coefficient of var^power as a polynomial in the same ring (var absent).
  MultiPoly coefficient_in(std::size_t var, int power) const {
    MultiPoly out(nvars_);
    for (const auto& [m, c] : terms_) {
      if (m[var] != power) continue;
      Monomial k = m;
      k[var] = 0;
      out.terms_.emplace(std::move(k), c);
    }
    return out;
  }

  MultiPoly derivative(std::size_t var) const {
    MultiPoly out(nvars_);
    for (const auto& [m, c] : terms_) {
      if (m[var] == 0) continue;
      Monomial k = m;
      k[var] -= 1;
      out.add_term(k, c * FieldElement(m[var]));
    }
    return out;
  }

  /// Same polynomial viewed in a ring with n variables (n >= used variables).
  MultiPoly resized(std::size_t n) const {
    MultiPoly out(n);
    for (const auto& [m, c] : terms_) out.terms_.emplace(m.resized(n), c);
    return out;
  }

  /// Multiplies every term by a monomial.
  MultiPoly shifted(const Monomial& by) const {
    MultiPoly out(nvars_);
    for (const auto& [m, c] : terms_) out.terms_.emplace(m * by, c);
    return out;
  }

  /// Exponentwise minimum over all terms (the largest monomial factor).
  Monomial monomial_content() const {
    Monomial g(nvars_);
    bool first = true;
    for (const auto& [m, c] : terms_) {
      for (std::size_t i = 0; i < nvars_; ++i) g.exps[i] = first ? m[i] : std::min(g.exps[i], m[i]);
      first = false;
    }
    return g;
  }

  /// Lexicographically largest term.
  const std::pair<const Monomial, FieldElement>& leading_term() const {
    if (terms_.empty()) throw InvalidInput("leading term of the zero polynomial");
    return *terms_.rbegin();
  }

  MultiPoly operator-() const {
    MultiPoly out = *this;
    for (auto& [m, c] : out.terms_) c = -c;
    return out;
  }
  MultiPoly& operator+=(const MultiPoly& o) {
    check_arity(o);
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
  }
  MultiPoly& operator-=(const MultiPoly& o) {
    check_arity(o);
    for (const auto& [m, c] : o.terms_) add_term(m, -c);
    return *this;
  }
  friend MultiPoly operator+(MultiPoly a, const MultiPoly& b) { return a += b; }
  friend MultiPoly operator-(MultiPoly a, const MultiPoly& b) { return a -= b; }
  friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
    a.check_arity(b);
    MultiPoly out(a.nvars_);
    for (const auto& [ma, ca] : a.terms_)
      for (const auto& [mb, cb] : b.terms_) out.add_term(ma * mb, ca * cb);
    return out;
  }
  friend MultiPoly operator*(const FieldElement& s, const MultiPoly& a) {
    if (s.is_zero()) return MultiPoly(a.nvars_);
    MultiPoly out(a.nvars_);
    for (const auto& [m, c] : a.terms_) out.terms_.emplace(m, s * c);
    return out;
  }
  friend MultiPoly operator*(const MultiPoly& a, const FieldElement& s) { return s * a; }
  MultiPoly& operator*=(const MultiPoly& o) { return *this = *this * o; }

  MultiPoly pow(unsigned e) const {
    MultiPoly result = constant(nvars_, FieldElement(1)), base = *this;
    while (e > 0) {
      if (e & 1u) result = result * base;
      e >>= 1u;
      if (e) base = base * base;
    }
    return result;
  }

  friend bool operator==(const MultiPoly& a, const MultiPoly& b) {
    if (a.terms_.size() != b.terms_.size()) return false;
    auto ib = b.terms_.begin();
    for (const auto& [m, c] : a.terms_) {
      if (!(m.exps == ib->first.exps) || !(c == ib->second)) return false;
      ++ib;
    }
    return true;
  }
  friend bool operator!=(const MultiPoly& a, const MultiPoly& b) { return !(a == b); }

 private:
  void check_arity(const MultiPoly& o) const {
    if (o.nvars_ != nvars_) throw InvalidInput("polynomials over different variable sets");
  }

  std::size_t nvars_;
  Terms terms_;
};

/// Terms in display order: descending (weighted) degree, then descending lex.
inline std::vector<std::pair<Monomial, FieldElement>> display_terms(const MultiPoly& p,
                                                                    std::span<const int> weights = {}) {
  std::vector<std::pair<Monomial, FieldElement>> t(p.terms().begin(), p.terms().end());
  auto deg = [&](const Monomial& m) -> long {
    return weights.empty() ? m.total_degree() : m.weighted_degree(weights);
  };
  std::stable_sort(t.begin(), t.end(), [&](const auto& a, const auto& b) {
    long da = deg(a.first), db = deg(b.first);
    if (da != db) return da > db;
    return a.first > b.first;
  });
  return t;
}

/// Human readable form that the expression parser accepts back,
/// e.g. "x1*x3 - x2^2 + 1/3*x2 + 2/9".
inline std::string to_string(const MultiPoly& p, std::span<const std::string> names,
                             std::span<const int> weights = {}) {
  if (p.is_zero()) return "0";
  std::string out;
  for (const auto& [m, c] : display_terms(p, weights)) {
    bool rational = c.is_rational();
    bool negative = rational && sgn(c.rational_value()) < 0;
    FieldElement mag = negative ? -c : c;
    if (out.empty())
      out += negative ? "-" : "";
    else
      out += negative ? " - " : " + ";
    if (m.is_one()) {
      out += rational ? mag.to_string() : "(" + mag.to_string() + ")";
      continue;
    }
    if (!mag.is_one()) out += (rational ? mag.to_string() : "(" + mag.to_string() + ")") + "*";
    out += to_string(m, names);
  }
  return out;
}

/// Substitutes x_i -> values[i] (all values in one common ring).
inline MultiPoly compose(const MultiPoly& p, std::span<const MultiPoly> values) {
  if (values.size() < p.nvars()) throw InvalidInput("compose: too few substitution values");
  if (values.empty()) return p;
  const std::size_t target = values[0].nvars();
  std::vector<std::vector<MultiPoly>> powers(p.nvars());
  auto power = [&](std::size_t var, int e) -> const MultiPoly& {
    auto& cache = powers[var];
    if (cache.empty()) cache.push_back(MultiPoly::constant(target, FieldElement(1)));
    while (static_cast<int>(cache.size()) <= e) cache.push_back(cache.back() * values[var]);
    return cache[static_cast<std::size_t>(e)];
  };
  MultiPoly out(target);
  for (const auto& [m, c] : p.terms()) {
    MultiPoly t = MultiPoly::constant(target, c);
    for (std::size_t i = 0; i < p.nvars(); ++i)
      if (m[i] > 0) t = t * power(i, m[i]);
    out += t;
  }
  return out;
}

enum class Sign { Plus, Minus };

/// Replaces x_j by x_j + R (or x_j - R). R may only involve variables before j.
inline MultiPoly substitute_variable(const MultiPoly& f, std::size_t j, const MultiPoly& r, Sign sign) {
  if (r.nvars() != f.nvars()) throw InvalidInput("substitute_variable: arity mismatch");
  for (std::size_t v = j; v < r.nvars(); ++v)
    if (r.involves(v))
      throw InvalidInput("substitute_variable: replacement involves x" + std::to_string(v + 1) +
                         ", not a variable before x" + std::to_string(j + 1));
  std::vector<MultiPoly> values;
  for (std::size_t v = 0; v < f.nvars(); ++v) values.push_back(MultiPoly::variable(f.nvars(), v));
  values[j] = sign == Sign::Plus ? values[j] + r : values[j] - r;
  return compose(f, values);
}

/// Exact quotient a / b, or nullopt when b does not divide a.
inline std::optional<MultiPoly> divide_exact(const MultiPoly& a, const MultiPoly& b) {
  if (b.is_zero()) throw InvalidInput("division by the zero polynomial");
  MultiPoly rem = a, quo(a.nvars());
  const auto& [lb_m, lb_c] = b.leading_term();
  FieldElement inv = lb_c.inverse();
  while (!rem.is_zero()) {
    const auto& [lm, lc] = rem.leading_term();
    if (!lb_m.divides(lm)) return std::nullopt;
    MultiPoly t = MultiPoly::term(lm / lb_m, lc * inv);
    quo += t;
    rem -= t * b;
  }
  return quo;
}

}  // namespace twc
