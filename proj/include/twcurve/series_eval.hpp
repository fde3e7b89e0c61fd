#pragma once

// Laurent expansions of polynomials and rational functions in (x, y) at a place.

#include <algorithm>
#include <string>
#include <vector>

#include "twcurve/errors.hpp"
#include "twcurve/laurent_series.hpp"
#include "twcurve/multipoly.hpp"
#include "twcurve/puiseux.hpp"
#include "twcurve/rational_function.hpp"

namespace twc {

/// P(x(T), y(T)) with pessimistic precision, by Horner's rule in y.
inline LaurentSeries evaluate_polynomial(const MultiPoly& p, const LaurentSeries& xs, const LaurentSeries& ys) {
  if (p.nvars() != 2) throw InvalidInput("evaluate_polynomial expects a polynomial in (x, y)");
  if (p.is_zero()) return LaurentSeries::zero();
  const int dy = p.degree_in(1), dx = std::max(0, p.degree_in(0));
  std::vector<LaurentSeries> xpow{LaurentSeries::constant(FieldElement(1))};
  for (int i = 1; i <= dx; ++i) xpow.push_back(xpow.back() * xs);
  LaurentSeries acc = LaurentSeries::zero();
  for (int j = dy; j >= 0; --j) {
    acc = acc * ys;
    for (const auto& [m, c] : p.terms())
      if (m[1] == j) acc += c * xpow[static_cast<std::size_t>(m[0])];
  }
  return acc;
}

struct EvaluatedSeries {
  LaurentSeries series;
  /// The (possibly refined) parametrization that produced `series`.
  PlaceParametrization place;
};

/// h(x(T), y(T)) known at least modulo T^want_order, truncated there. Refines
/// the parametrization as needed; PrecisionExhausted when the term cap is hit
/// first (for instance when the denominator vanishes on the curve).
inline EvaluatedSeries series_evaluate(const RationalFunction& h, PlaceParametrization par, long want_order) {
  if (h.is_zero()) return {LaurentSeries::zero(want_order), par};
  for (;;) {
    LaurentSeries num = evaluate_polynomial(h.numerator(), par.x_series(), par.y_series());
    LaurentSeries den = evaluate_polynomial(h.denominator(), par.x_series(), par.y_series());
    if (par.y_series().is_exact()) {
      if (den.is_zero_to_truncation())
        throw PrecisionExhausted("denominator of " + h.to_string() + " vanishes on the branch");
      if (num.is_zero_to_truncation()) return {LaurentSeries::zero(want_order), par};
    }
    long deficit = 0;
    if (den.is_zero_to_truncation() || num.is_zero_to_truncation()) {
      deficit = std::max<long>(8, par.order());
    } else {
      LaurentSeries q = num * den.inverse(want_order - num.order());
      if (q.precision() >= want_order) return {q.truncated(want_order), par};
      deficit = want_order - q.precision();
    }
    const long before = par.order();
    try {
      par = par.refine(before + std::max<long>(deficit, 1));
      if (par.order() <= before) throw PrecisionExhausted("refinement made no progress");
    } catch (const PrecisionExhausted& e) {
      throw PrecisionExhausted("cannot expand " + h.to_string() + " to O(T^" + std::to_string(want_order) +
                               "): " + e.what());
    }
  }
}

}  // namespace twc
