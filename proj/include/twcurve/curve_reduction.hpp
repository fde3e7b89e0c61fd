#pragma once

// Exact reduction of polynomials in (x, y) modulo a plane curve F(x, y) = 0 by
// pseudo-division in y. Membership in the ideal (F) is decided by a zero
// remainder, which is sound for irreducible F.

#include <utility>

#include "twcurve/errors.hpp"
#include "twcurve/multipoly.hpp"
#include "twcurve/rational_function.hpp"

namespace twc {

struct PseudoRemainder {
  MultiPoly remainder;
  /// lc^power * G - Q * F = remainder, with lc the leading y-coefficient of F.
  unsigned power = 0;
};

inline PseudoRemainder pseudo_remainder(const MultiPoly& g, const MultiPoly& f) {
  const int d = f.degree_in(1);
  if (d <= 0) throw InvalidInput("curve polynomial must have positive degree in y");
  const MultiPoly lc = f.coefficient_in(1, d);
  const std::optional<FieldElement> lc_const = lc.constant_value();
  MultiPoly r = g;
  unsigned power = 0;
  for (int k = r.degree_in(1); k >= d; k = r.degree_in(1)) {
    MultiPoly top = r.coefficient_in(1, k);
    MultiPoly shift = f.shifted(Monomial::unit(2, 1, k - d));
    if (lc_const) {
      // Constant leading coefficient: an honest division step keeps sizes down.
      r -= (top * lc_const->inverse()) * shift;
    } else {
      r = lc * r - top * shift;
      ++power;
    }
  }
  return {std::move(r), lc_const ? 0u : power};
}

inline MultiPoly reduce_mod_curve(const MultiPoly& g, const MultiPoly& f) { return pseudo_remainder(g, f).remainder; }

inline bool is_zero_mod_curve(const MultiPoly& g, const MultiPoly& f) { return pseudo_remainder(g, f).remainder.is_zero(); }

inline bool is_zero_mod_curve(const RationalFunction& h, const MultiPoly& f) {
  return is_zero_mod_curve(h.numerator(), f);
}

/// A representative of h modulo the curve whose numerator and denominator have
/// y-degree below that of F. Throws ZeroDivisorDetected if the denominator
/// vanishes on the curve.
inline RationalFunction reduce_fraction_mod_curve(const RationalFunction& h, const MultiPoly& f) {
  auto n = pseudo_remainder(h.numerator(), f);
  auto d = pseudo_remainder(h.denominator(), f);
  if (d.remainder.is_zero()) throw ZeroDivisorDetected("denominator vanishes on the curve");
  if (n.power == 0 && d.power == 0) return RationalFunction(std::move(n.remainder), std::move(d.remainder));
  const int deg = f.degree_in(1);
  const MultiPoly lc = f.coefficient_in(1, deg);
  return RationalFunction(lc.pow(d.power) * n.remainder, lc.pow(n.power) * d.remainder);
}

}  // namespace twc
