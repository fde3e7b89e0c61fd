#pragma once

/**
 * JSON encodings used by the command line front end. All numbers that come
 * from the mathematics are exact strings: a rational is "p/q" (or "p"), an
 * element of Q(a) is the array of its power-basis coordinates. Objects keep
 * insertion order so that output is byte-for-byte reproducible.
 */

#include <span>
#include <string>
#include <vector>

#include "json.hpp"
#include "twcurve/laurent_series.hpp"
#include "twcurve/multipoly.hpp"
#include "twcurve/number_field.hpp"
#include "twcurve/rational_function.hpp"

namespace twc::cli {

using Json = nlohmann::ordered_json;

/// Elements print as strings over Q and as coordinate arrays over Q(a).
struct Encoder {
  int field_degree = 1;

  Json element(const FieldElement& c) const {
    if (field_degree == 1) return c.rational_value().get_str();
    Json arr = Json::array();
    auto coords = c.coordinates();
    coords.resize(static_cast<std::size_t>(field_degree), Rational(0));
    for (const auto& q : coords) arr.push_back(q.get_str());
    return arr;
  }

  Json elements(std::span<const FieldElement> cs) const {
    Json arr = Json::array();
    for (const auto& c : cs) arr.push_back(element(c));
    return arr;
  }

  Json polynomial(const MultiPoly& p, std::span<const std::string> names) const {
    Json terms = Json::array();
    for (const auto& [m, c] : display_terms(p, {})) {
      Json exps = Json::array();
      for (std::size_t i = 0; i < m.nvars(); ++i) exps.push_back(m[i]);
      terms.push_back(Json{{"exponents", exps}, {"coefficient", element(c)}});
    }
    return Json{{"text", to_string(p, names)}, {"terms", terms}};
  }

  Json rational_function(const RationalFunction& f) const {
    static const std::string xy[] = {"x", "y"};
    return Json{{"text", f.to_string()},
                {"numerator", polynomial(f.numerator(), xy)},
                {"denominator", polynomial(f.denominator(), xy)}};
  }

  /// Known coefficients from the valuation up to the precision.
  Json series(const LaurentSeries& s) const {
    Json coeffs = Json::array();
    if (!s.is_zero_to_truncation())
      for (long e = s.order(); e < s.end_exponent(); ++e) {
        const FieldElement c = s.coefficient(e);
        if (!c.is_zero()) coeffs.push_back(Json{{"exponent", e}, {"coefficient", element(c)}});
      }
    Json out{{"text", s.to_string()}, {"terms", coeffs}};
    out["precision"] = s.is_exact() ? Json(nullptr) : Json(s.precision());
    return out;
  }
};

}  // namespace twc::cli
