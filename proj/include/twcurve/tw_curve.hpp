#pragma once

/**
 * Canonical equations of an affine curve with one place at infinity.
 *
 * build_tw takes a plane curve F(x, y) = 0, a place P and generators f_1..f_r
 * of the functions regular away from P whose pole orders are the minimal
 * generators of the pole semigroup at P. It returns relations F_2, ..., F_r
 * where F_j involves x_1..x_j only, together with the adjusted generators.
 * verify_tw re-checks every property from scratch.
 */

#include <algorithm>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "twcurve/errors.hpp"
#include "twcurve/generator_system.hpp"
#include "twcurve/multipoly.hpp"
#include "twcurve/normal_forms.hpp"
#include "twcurve/relation.hpp"
#include "twcurve/tschirnhaus.hpp"

namespace twc {

struct TWEquation {
  std::size_t j = 0;         // the relation introduces x_j (1-based, j >= 2)
  std::vector<int> weights;  // p_1, ..., p_j
  MultiPoly polynomial;      // in x_1..x_j
  NormalFormSet normal_forms;
  Monomial lead;                      // coefficient normalized to 1
  std::optional<GoodMonomial> good;   // j >= 3
  std::optional<Monomial> partner;    // j == 2: x_2^{q_1}

  /// Monomials whose coefficients must vanish.
  std::vector<Monomial> cancelled() const {
    if (j == 2) return two_variable_shape(weights[0], weights[1]).cancelled();
    std::vector<Monomial> out;
    for (const auto& [n, t] : tschirnhaus_targets(normal_forms, *good)) out.push_back(t);
    return out;
  }
};

struct TWCurve {
  std::size_t r = 0;
  std::vector<int> degrees;
  GeneratorSystem generators;
  std::vector<TWEquation> equations;  // equations[i] introduces x_{i+2}
};

struct TWOptions {
  RelationOptions relation;
};

inline TWEquation tw_equation_shape(const std::vector<int>& degrees, std::size_t j) {
  TWEquation eq;
  eq.j = j;
  eq.weights.assign(degrees.begin(), degrees.begin() + static_cast<long>(j));
  if (j == 2) {
    auto shape = two_variable_shape(degrees[0], degrees[1]);
    eq.normal_forms = shape.normal_forms;
    eq.lead = shape.lead;
    eq.partner = shape.partner;
  } else {
    auto ng = normal_forms_and_good_monomial(eq.weights);
    eq.normal_forms = std::move(ng.normal_forms);
    eq.lead = ng.good.monomial;
    eq.good = ng.good;
  }
  eq.polynomial = MultiPoly(j);
  return eq;
}

inline TWCurve build_tw(const MultiPoly& curve, const PlaceParametrization& place,
                        const std::vector<RationalFunction>& gens, const TWOptions& opt = {}) {
  GeneratorSystem gs(curve, place, gens);
  const std::size_t r = gs.size();
  std::vector<int> degrees = gs.degrees();
  std::vector<TWEquation> eqs;
  for (std::size_t j = 2; j <= r; ++j) {
    TWEquation eq = tw_equation_shape(degrees, j);
    std::vector<Monomial> basis = eq.normal_forms.monomials();
    basis.push_back(eq.lead);
    MultiPoly f = find_relation(gs, basis, eq.lead, opt.relation);
    if (j == 2)
      f = two_variable_reduce(gs, f, two_variable_shape(degrees[0], degrees[1]));
    else
      f = tschirnhaus_reduce(gs, f, eq.normal_forms, *eq.good, opt.relation);
    eq.polynomial = std::move(f);
    eqs.push_back(std::move(eq));
  }
  return TWCurve{r, std::move(degrees), std::move(gs), std::move(eqs)};
}

struct TWCheck {
  std::size_t stage = 0;  // 0 for checks on the whole system, otherwise j
  std::string key;
  std::string description;
  bool passed = true;
  std::string detail;
};

struct TWReport {
  std::vector<TWCheck> checks;
  bool passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const TWCheck& c) { return c.passed; });
  }
  std::vector<TWCheck> failures() const {
    std::vector<TWCheck> out;
    for (const auto& c : checks)
      if (!c.passed) out.push_back(c);
    return out;
  }
};

/// Checks on one relation: support, normalization, cancellations, good-monomial
/// conditions and exact vanishing on the curve.
inline std::vector<TWCheck> verify_equation(const GeneratorSystem& gs, const TWEquation& eq) {
  std::vector<TWCheck> out;
  const auto names = indexed_names(eq.j);
  const MultiPoly& f = eq.polynomial;
  const std::size_t st = eq.j;

  TWCheck support{st, "support", "support lies in the leading monomial and the normal forms", true, ""};
  if (f.nvars() != eq.j) {
    support.passed = false;
    support.detail = "relation has " + std::to_string(f.nvars()) + " variables";
  } else {
    for (const auto& [m, c] : f.terms())
      if (!(m == eq.lead) && !eq.normal_forms.contains(m)) {
        support.passed = false;
        support.detail = to_string(m, names) + " is outside the allowed support";
        break;
      }
  }
  out.push_back(support);

  TWCheck norm{st, "normalization", "coefficient of " + to_string(eq.lead, names) + " is 1", true, ""};
  if (!f.coefficient(eq.lead).is_one()) {
    norm.passed = false;
    norm.detail = "coefficient is " + f.coefficient(eq.lead).to_string();
  }
  out.push_back(norm);

  if (eq.j == 2) {
    TWCheck partner{st, "partner", "coefficient of " + to_string(*eq.partner, names) + " is nonzero", true, ""};
    if (f.coefficient(*eq.partner).is_zero()) partner.passed = false;
    out.push_back(partner);
    auto shape = two_variable_shape(eq.weights[0], eq.weights[1]);
    TWCheck c2{st, "cancellation_x2",
               "coefficients of x1^i*x2^" + std::to_string(shape.q1 - 1) + " vanish", true, ""};
    TWCheck c1{st, "cancellation_x1", "coefficient of x1^" + std::to_string(shape.q2 - 1) + " vanishes", true, ""};
    for (const auto& m : shape.cancelled()) {
      if (f.coefficient(m).is_zero()) continue;
      TWCheck& c = m == Monomial::unit(2, 0, shape.q2 - 1) ? c1 : c2;
      c.passed = false;
      c.detail = to_string(m, names) + " has coefficient " + f.coefficient(m).to_string();
    }
    out.push_back(c2);
    out.push_back(c1);
  } else {
    auto conds = check_good_monomial(eq.normal_forms, *eq.good);
    static const char* keys[] = {"normal_forms", "good_monomial_var", "good_monomial_i", "good_monomial_ii"};
    for (std::size_t i = 0; i < conds.size(); ++i)
      out.push_back({st, i < 4 ? keys[i] : "good_monomial", conds[i].name, conds[i].passed, conds[i].detail});
    TWCheck canc{st, "cancellation", "coefficients of n*m/x" + std::to_string(eq.j) + " vanish for deg n < p" +
                                         std::to_string(eq.j),
                 true, ""};
    for (const auto& t : eq.cancelled())
      if (!f.coefficient(t).is_zero()) {
        canc.passed = false;
        canc.detail = to_string(t, names) + " has coefficient " + f.coefficient(t).to_string();
        break;
      }
    out.push_back(canc);
  }

  TWCheck member{st, "ideal_membership", "relation vanishes identically on the curve", true, ""};
  try {
    if (!gs.certifies(f)) {
      member.passed = false;
      member.detail = "nonzero remainder modulo the curve";
    }
  } catch (const Error& e) {
    member.passed = false;
    member.detail = e.what();
  }
  out.push_back(member);
  return out;
}

/// Pole orders of f_1..f_k read off the series, compared against `degrees`.
inline std::vector<TWCheck> verify_degrees(const GeneratorSystem& gs, std::size_t k, bool require_gcd_one) {
  std::vector<TWCheck> out;
  TWCheck orders{0, "pole_orders", "series of f_i has order -p_i", true, ""};
  for (std::size_t i = 0; i < k; ++i) {
    const long p = gs.degrees()[i];
    try {
      LaurentSeries s = gs.series(i, -p + 1);
      if (s.is_zero_to_truncation() || s.order() != -p) {
        orders.passed = false;
        orders.detail = "f" + std::to_string(i + 1) + " does not have a pole of order " + std::to_string(p);
      }
    } catch (const Error& e) {
      orders.passed = false;
      orders.detail = e.what();
    }
  }
  out.push_back(orders);
  std::vector<int> d(gs.degrees().begin(), gs.degrees().begin() + static_cast<long>(k));
  auto problems = degree_problems(d, require_gcd_one);
  TWCheck gens{0, "degree_bijection", "pole orders are increasing minimal generators of the semigroup", problems.empty(),
               problems.empty() ? "" : problems.front()};
  out.push_back(gens);
  return out;
}

/// Full re-verification of a canonical system.
inline TWReport verify_tw(const TWCurve& tw) {
  TWReport rep;
  rep.checks = verify_degrees(tw.generators, tw.r, true);
  for (const auto& eq : tw.equations) {
    auto more = verify_equation(tw.generators, eq);
    rep.checks.insert(rep.checks.end(), more.begin(), more.end());
  }
  return rep;
}

/// The first k variables of a canonical system with F_2..F_k (k >= 1).
inline TWReport verify_prefix(const TWCurve& tw, std::size_t k) {
  if (k < 1 || k > tw.r) throw InvalidInput("prefix length out of range");
  TWReport rep;
  rep.checks = verify_degrees(tw.generators, k, false);
  for (const auto& eq : tw.equations)
    if (eq.j <= k) {
      auto more = verify_equation(tw.generators, eq);
      rep.checks.insert(rep.checks.end(), more.begin(), more.end());
    }
  return rep;
}

}  // namespace twc
