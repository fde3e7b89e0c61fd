#pragma once

/**
 * Generator functions f_1, ..., f_r at a place P of a plane curve.
 *
 * Each generator keeps three synchronized views:
 *   - the user-supplied rational function in (x, y),
 *   - a correction polynomial in the lower generators, so that
 *     f_i = original_i + correction_i(f_1, ..., f_{i-1}),
 *   - the combined rational function and its Laurent series at P.
 * Every polynomial substitution x_j -> x_j +/- R(x_1, ..., x_{j-1}) applied to
 * the equations is mirrored here (f_j becomes f_j -/+ R(f)) and appended to a
 * log. After each update the series of the combined rational function is
 * compared against the series predicted from the previous state.
 *
 * Series and the refined parametrization are cached internally; a single
 * GeneratorSystem must not be evaluated from several threads at once, but
 * copies are independent.
 */

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "twcurve/curve_reduction.hpp"
#include "twcurve/errors.hpp"
#include "twcurve/laurent_series.hpp"
#include "twcurve/multipoly.hpp"
#include "twcurve/puiseux.hpp"
#include "twcurve/rational_function.hpp"
#include "twcurve/semigroup.hpp"
#include "twcurve/series_eval.hpp"

namespace twc {

struct Generator {
  RationalFunction original;
  MultiPoly correction;  // in x_1..x_r, only variables before this generator occur
  RationalFunction expression;
  int pole_order = 0;
};

struct SubstitutionRecord {
  std::size_t var;        // x_{var+1} -> x_{var+1} + sign * replacement
  MultiPoly replacement;  // in x_1..x_r
  Sign sign;
  long replacement_degree;  // weighted degree of the replacement (-1 for zero)
  long variable_degree;     // p_{var+1}
};

/// Checks that `degrees` are strictly increasing and that none of them is a
/// non-negative combination of the others. With require_gcd_one the gcd must be 1.
inline std::vector<std::string> degree_problems(const std::vector<int>& degrees, bool require_gcd_one) {
  std::vector<std::string> problems;
  for (std::size_t i = 1; i < degrees.size(); ++i)
    if (degrees[i] <= degrees[i - 1]) problems.push_back("pole orders are not strictly increasing");
  for (std::size_t i = 0; i < degrees.size(); ++i) {
    if (degrees[i] <= 0) {
      problems.push_back("generator f" + std::to_string(i + 1) + " has no pole");
      continue;
    }
    std::vector<int> others;
    for (std::size_t k = 0; k < degrees.size(); ++k)
      if (k != i && degrees[k] > 0) others.push_back(degrees[k]);
    if (detail::representable_up_to(others, degrees[i])[static_cast<std::size_t>(degrees[i])])
      problems.push_back("pole order " + std::to_string(degrees[i]) + " of f" + std::to_string(i + 1) +
                         " is generated by the others");
  }
  if (require_gcd_one) {
    int g = 0;
    for (int d : degrees) g = std::gcd(g, d);
    if (g != 1) problems.push_back("pole orders have gcd " + std::to_string(g));
  }
  return problems;
}

class GeneratorSystem {
 public:
  GeneratorSystem(MultiPoly curve, PlaceParametrization place, const std::vector<RationalFunction>& gens)
      : curve_(std::move(curve)), place_(std::move(place)) {
    if (gens.empty()) throw InvalidInput("at least one generator function is required");
    const std::size_t r = gens.size();
    for (std::size_t i = 0; i < r; ++i) {
      Generator g{gens[i], MultiPoly(r), gens[i], 0};
      if (gens[i].is_zero()) throw WrongPoleOrders("generator f" + std::to_string(i + 1) + " is zero");
      gens_.push_back(std::move(g));
    }
    cache_.resize(r);
    for (std::size_t i = 0; i < r; ++i) {
      LaurentSeries s = series(i, 1);
      if (s.is_zero_to_truncation() || s.order() >= 0)
        throw WrongPoleOrders("generator f" + std::to_string(i + 1) + " = " + gens[i].to_string() +
                              " has no pole at the place");
      gens_[i].pole_order = static_cast<int>(-s.order());
      degrees_.push_back(gens_[i].pole_order);
    }
    int g = 0;
    for (int d : degrees_) g = std::gcd(g, d);
    if (g != 1) {
      std::string list;
      for (int d : degrees_) list += (list.empty() ? "" : ", ") + std::to_string(d);
      throw GcdNotOne("pole orders {" + list + "} have gcd " + std::to_string(g));
    }
    auto problems = degree_problems(degrees_, true);
    if (!problems.empty()) {
      std::string list;
      for (int d : degrees_) list += (list.empty() ? "" : ", ") + std::to_string(d);
      throw WrongPoleOrders("pole orders {" + list + "}: " + problems.front() +
                            "; the generators must have the minimal generators of the pole semigroup as "
                            "pole orders, in increasing order");
    }
  }

  const MultiPoly& curve() const { return curve_; }
  const PlaceParametrization& place() const { return place_; }
  std::size_t size() const { return gens_.size(); }
  const std::vector<int>& degrees() const { return degrees_; }
  NumericalSemigroup semigroup() const { return NumericalSemigroup(degrees_); }
  const Generator& generator(std::size_t i) const { return gens_.at(i); }
  const std::vector<Generator>& generators() const { return gens_; }
  const std::vector<SubstitutionRecord>& substitution_log() const { return log_; }
  std::vector<RationalFunction> expressions() const {
    std::vector<RationalFunction> out;
    for (const auto& g : gens_) out.push_back(g.expression);
    return out;
  }

  /// Series of f_i known modulo T^precision (exactly truncated there).
  LaurentSeries series(std::size_t i, long precision) const {
    auto& c = cache_.at(i);
    if (!c || c->precision() < precision) {
      auto ev = series_evaluate(gens_[i].expression, place_, precision);
      place_ = ev.place;
      c = ev.series;
    }
    return c->truncated(precision);
  }

  /// Series of the monomial in f_1, ..., f_r modulo T^precision.
  LaurentSeries monomial_series(const Monomial& m, long precision) const {
    long deg = 0;
    for (std::size_t i = 0; i < m.nvars(); ++i) deg += static_cast<long>(m[i]) * degrees_.at(i);
    LaurentSeries acc = LaurentSeries::constant(FieldElement(1));
    for (std::size_t i = 0; i < m.nvars(); ++i) {
      if (m[i] == 0) continue;
      LaurentSeries s = series(i, precision + deg - degrees_[i]);
      for (int k = 0; k < m[i]; ++k) acc = acc * s;
    }
    return acc.truncated(precision);
  }

  /// Series of P(f_1, ..., f_r) modulo T^precision.
  LaurentSeries polynomial_series(const MultiPoly& p, long precision) const {
    LaurentSeries acc = LaurentSeries::zero();
    for (const auto& [m, c] : p.terms()) acc += c * monomial_series(m, precision);
    return acc.truncated(precision);
  }

  /// Numerator of P(f) over the common denominator prod_i den(f_i)^{deg_i P}.
  MultiPoly cleared_numerator(const MultiPoly& p) const { return cleared(p).first; }

  /// P(f_1, ..., f_r) as a rational function in (x, y).
  RationalFunction rational_value(const MultiPoly& p) const {
    auto [n, d] = cleared(p);
    return RationalFunction(std::move(n), std::move(d));
  }

  /// Exact test P(f_1, ..., f_r) = 0 on the curve.
  bool certifies(const MultiPoly& p) const { return is_zero_mod_curve(cleared_numerator(p), curve_); }

  /// Mirrors the substitution x_j -> x_j + sign * R on the generators:
  /// f_j becomes f_j - sign * R(f). R may only involve x_1..x_{j-1}.
  void substitute(std::size_t j, const MultiPoly& replacement, Sign sign) {
    const std::size_t r = size();
    MultiPoly rep = replacement.resized(r);
    for (std::size_t v = j; v < r; ++v)
      if (rep.involves(v)) throw InvalidInput("replacement for x" + std::to_string(j + 1) + " involves x" + std::to_string(v + 1));
    if (rep.is_zero()) return;

    long check_prec = -degrees_[j] + 12;
    LaurentSeries predicted = series(j, check_prec) - (sign == Sign::Plus ? FieldElement(1) : FieldElement(-1)) *
                                                            polynomial_series(rep, check_prec);

    RationalFunction value = rational_value(rep);
    Generator& g = gens_[j];
    g.correction = sign == Sign::Plus ? g.correction - rep : g.correction + rep;
    g.expression = sign == Sign::Plus ? g.expression - value : g.expression + value;
    // Other corrections were written in terms of the old f_j = f_j' + sign * R.
    for (std::size_t i = 0; i < r; ++i)
      if (i != j && gens_[i].correction.involves(j)) gens_[i].correction = substitute_variable(gens_[i].correction, j, rep, sign);
    cache_[j].reset();
    log_.push_back({j, rep, sign, rep.weighted_degree(degrees_), degrees_[j]});

    LaurentSeries actual = series(j, check_prec);
    if (!(actual == predicted))
      throw InvalidInput("internal: generator f" + std::to_string(j + 1) + " series drifted after substitution");
    check_consistency(j);
  }

  /// Compares the series of the combined rational function with the series of
  /// original + correction(f).
  void check_consistency(std::size_t i, long extra_terms = 12) const {
    long prec = -degrees_[i] + extra_terms;
    LaurentSeries combined = series(i, prec);
    LaurentSeries parts = series_evaluate(gens_[i].original, place_, prec).series + polynomial_series(gens_[i].correction, prec);
    if (!(combined == parts.truncated(prec)))
      throw InvalidInput("internal: generator f" + std::to_string(i + 1) + " representations disagree");
  }

 private:
  std::pair<MultiPoly, MultiPoly> cleared(const MultiPoly& p) const {
    if (p.nvars() > size()) throw InvalidInput("polynomial has more variables than there are generators");
    return cleared_composition(p, expressions());
  }

  MultiPoly curve_;
  mutable PlaceParametrization place_;
  std::vector<Generator> gens_;
  std::vector<int> degrees_;
  std::vector<SubstitutionRecord> log_;
  mutable std::vector<std::optional<LaurentSeries>> cache_;
};

}  // namespace twc
