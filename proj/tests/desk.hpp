#pragma once

// Shared curves and generator functions for the test programs.

#include <string>
#include <vector>

#include "twcurve/twcurve.hpp"

namespace desk {

using namespace twc;

inline MultiPoly X() { return MultiPoly::variable(2, 0); }
inline MultiPoly Y() { return MultiPoly::variable(2, 1); }
inline MultiPoly C(const Rational& c) { return MultiPoly::constant(2, FieldElement(c)); }

inline MultiPoly poly(const std::string& text) { return parse_polynomial(text, {"x", "y"}); }
inline MultiPoly poly_in(const std::string& text, std::size_t n) { return parse_polynomial(text, indexed_names(n)); }
inline RationalFunction rf(const std::string& text) { return parse_rational_function(text); }
inline Rational q(long n, long d = 1) {
  Rational r(n, d);
  r.canonicalize();
  return r;
}

/// Genus-two curve with a Weierstrass place at the origin.
inline MultiPoly genus2_curve() { return poly("x - y^2 + x^2*y^2 + y^4"); }
inline PlaceCenter origin() { return PlaceCenter::affine(FieldElement(0), FieldElement(0)); }

inline std::vector<RationalFunction> genus2_generators() {
  return {rf("(y^2 - 1)/(x*y)"), rf("(x - 1 + y^2)/x^2"), rf("(8*x^2 + 4*y^2*x - 4*y^2 + 4*y^4)/(4*x^3*y)")};
}

inline PlaceParametrization genus2_place(long order = 12) { return expand_place(genus2_curve(), origin(), {}, order); }

inline GeneratorSystem genus2_system() { return GeneratorSystem(genus2_curve(), genus2_place(), genus2_generators()); }

inline TWCurve genus2_tw() { return build_tw(genus2_curve(), genus2_place(), genus2_generators()); }

inline MultiPoly elliptic_curve() { return poly("y^2 - x^3 - x - 1"); }
inline TWCurve elliptic_tw(const MultiPoly& curve = elliptic_curve()) {
  return build_tw(curve, expand_place(curve, PlaceCenter::infinity(), {}, 10),
                  {RationalFunction::x(), RationalFunction::y()});
}

inline ScalingMap scaling(std::vector<long> v) {
  ScalingMap s;
  for (long x : v) s.lambda.emplace_back(x);
  return s;
}

}  // namespace desk
