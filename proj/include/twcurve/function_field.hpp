#pragma once

/**
 * Writing functions on the curve in terms of the generators f_1, ..., f_r.
 *
 * A function whose only pole is at P is a polynomial in the generators: its
 * leading pole is matched by a product of generators with the same pole order
 * and subtracted, until nothing is left. An arbitrary function is a quotient
 * A(f) / B(f), found by linear algebra on Laurent expansions over monomials of
 * bounded weighted degree. Every answer is certified exactly modulo the curve.
 */

#include <algorithm>
#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "twcurve/curve_reduction.hpp"
#include "twcurve/errors.hpp"
#include "twcurve/generator_system.hpp"
#include "twcurve/linear_algebra.hpp"
#include "twcurve/multipoly.hpp"
#include "twcurve/rational_function.hpp"
#include "twcurve/semigroup.hpp"
#include "twcurve/series_eval.hpp"
#include "twcurve/tw_curve.hpp"

namespace twc {

/// A(x_1..x_r) / B(x_1..x_r).
struct GeneratorRatio {
  MultiPoly numerator;
  MultiPoly denominator;

  bool is_polynomial() const { return denominator.is_constant(); }
  std::string to_string(std::span<const std::string> names) const {
    std::string n = twc::to_string(numerator, names);
    if (denominator.is_constant() && denominator.constant_value()->is_one()) return n;
    std::string d = twc::to_string(denominator, names);
    if (numerator.size() > 1) n = "(" + n + ")";
    if (denominator.size() > 1 || !denominator.terms().begin()->second.is_one()) d = "(" + d + ")";
    return n + "/" + d;
  }
};

/// True when h = A(f) / B(f) holds exactly on the curve.
inline bool certify_ratio(const GeneratorSystem& gs, const RationalFunction& h, const GeneratorRatio& q) {
  RationalFunction b = gs.rational_value(q.denominator);
  if (is_zero_mod_curve(b, gs.curve())) return false;
  return is_zero_mod_curve(h * b - gs.rational_value(q.numerator), gs.curve());
}

/// Q with h = Q(f_1, ..., f_r) on the curve. NotPolynomial when the reduction
/// meets a gap or the final certificate fails (h has poles away from P).
inline MultiPoly express_as_polynomial(const RationalFunction& h, const GeneratorSystem& gs) {
  const std::size_t r = gs.size();
  const NumericalSemigroup sg = gs.semigroup();
  MultiPoly q(r);
  LaurentSeries hs;
  try {
    hs = series_evaluate(h, gs.place(), 1).series;
  } catch (const PrecisionExhausted& e) {
    throw NotPolynomial(std::string("cannot expand the function at the place: ") + e.what());
  }
  for (;;) {
    LaurentSeries rest = hs - gs.polynomial_series(q, 1);
    if (rest.is_zero_to_truncation()) break;
    const long o = rest.order();
    if (o > 0) break;
    const long n = -o;
    auto w = sg.witness(n);
    if (!w) throw NotPolynomial("residual pole of order " + std::to_string(n) + " is a gap at the place");
    Monomial m = w->resized(r);
    LaurentSeries ms = gs.monomial_series(m, 1);
    q.add_term(m, rest.leading_coefficient() / ms.leading_coefficient());
  }
  if (!is_zero_mod_curve(h - gs.rational_value(q), gs.curve()))
    throw NotPolynomial("the function has poles away from the place");
  return q;
}

struct RatioOptions {
  long max_degree = 64;  // cap on the weighted degree of numerator and denominator
};

/// (A, B) with h * B(f) = A(f) on the curve, B monic in its highest pole order.
/// Both are combinations of one generator monomial per pole number up to a
/// bound that grows until a certified pair appears.
inline GeneratorRatio express_as_ratio(const RationalFunction& h, const GeneratorSystem& gs,
                                       const RatioOptions& opt = {}) {
  if (h.is_zero()) throw InvalidInput("express_as_ratio needs a nonzero function");
  const std::size_t r = gs.size();
  const NumericalSemigroup sg = gs.semigroup();
  long ho;
  {
    LaurentSeries probe = series_evaluate(h, gs.place(), 1).series;
    ho = probe.is_zero_to_truncation() ? 1 : probe.order();
  }
  for (long d = gs.degrees().front(); d <= opt.max_degree;) {
    std::vector<Monomial> mons;
    for (long n : sg.members_below(d + 1)) mons.push_back(sg.witness(n)->resized(r));
    const std::size_t k = mons.size();
    const long low = std::min(-d, -d + ho);
    long rows = static_cast<long>(2 * k) + 16;
    for (int attempt = 0; attempt < 4; ++attempt, rows *= 2) {
      const long prec = low + rows;
      LaurentSeries hs = series_evaluate(h, gs.place(), prec + d).series;
      Matrix<FieldElement> a(static_cast<std::size_t>(rows), 2 * k);
      for (std::size_t c = 0; c < k; ++c) {
        LaurentSeries ms = gs.monomial_series(mons[c], prec + std::max(0L, -ho));
        LaurentSeries hb = (hs * ms).truncated(prec);
        LaurentSeries ma = ms.truncated(prec);
        for (long row = 0; row < rows; ++row) {
          a(static_cast<std::size_t>(row), c) = -ma.coefficient(low + row);
          a(static_cast<std::size_t>(row), k + c) = hb.coefficient(low + row);
        }
      }
      auto ker = kernel_basis(a);
      if (ker.empty()) break;
      for (const auto& v : ker) {
        GeneratorRatio g{MultiPoly(r), MultiPoly(r)};
        std::size_t top = k;
        for (std::size_t c = 0; c < k; ++c)
          if (!v[k + c].is_zero()) top = c;
        if (top == k) continue;
        FieldElement scale = v[k + top].inverse();
        for (std::size_t c = 0; c < k; ++c) {
          if (!v[c].is_zero()) g.numerator.add_term(mons[c], scale * v[c]);
          if (!v[k + c].is_zero()) g.denominator.add_term(mons[c], scale * v[k + c]);
        }
        if (certify_ratio(gs, h, g)) return g;
      }
    }
    d = std::max(d + 1, d + d / 2);
  }
  throw BoundExhausted("no certified quotient of generator polynomials up to weighted degree " +
                       std::to_string(opt.max_degree));
}

struct BirationalInverse {
  GeneratorRatio x, y;
};

/// Expressions X, Y in the generators with X(f) = x and Y(f) = y on the curve.
inline BirationalInverse birational_inverse(const GeneratorSystem& gs, const RatioOptions& opt = {}) {
  auto one = [&](const RationalFunction& h) {
    try {
      return GeneratorRatio{express_as_polynomial(h, gs), MultiPoly::constant(gs.size(), FieldElement(1))};
    } catch (const NotPolynomial&) {
      return express_as_ratio(h, gs, opt);
    }
  };
  return {one(RationalFunction::x()), one(RationalFunction::y())};
}

inline BirationalInverse birational_inverse(const TWCurve& tw, const RatioOptions& opt = {}) {
  return birational_inverse(tw.generators, opt);
}

}  // namespace twc
