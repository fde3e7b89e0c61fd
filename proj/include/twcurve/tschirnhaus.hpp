#pragma once

/**
 * Reductions of the defining relations by polynomial changes of generators.
 *
 * Stage 2 works with the pair x_1, x_2 of degrees p_1 < p_2 and l = lcm(p_1, p_2),
 * q_2 = l / p_1, q_1 = l / p_2. Its support is the triangle of monomials of
 * degree below l plus the two corners x_1^{q_2} and x_2^{q_1}. Completing the
 * q_1-th power in x_2 removes every x_1^i x_2^{q_1 - 1}, and a shift of x_1 then
 * removes x_1^{q_2 - 1}.
 *
 * From stage 3 on the relation is m + (normal forms) with a good monomial
 * m = m' x_j^k. For each n in N with deg n < p_j, taken by decreasing degree,
 * x_j -> x_j - (c / k) n removes the coefficient c of n m / x_j without touching
 * the coefficients of higher targets; the relation is then recomputed on the
 * normal form support.
 */

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <utility>
#include <string>
#include <vector>

#include "twcurve/errors.hpp"
#include "twcurve/generator_system.hpp"
#include "twcurve/multipoly.hpp"
#include "twcurve/normal_forms.hpp"
#include "twcurve/rational.hpp"
#include "twcurve/relation.hpp"

namespace twc {

struct TwoVariableShape {
  long l = 0;
  int q1 = 0, q2 = 0;
  Monomial lead;     // x_1^{q_2}, normalized to coefficient 1
  Monomial partner;  // x_2^{q_1}
  std::vector<Monomial> triangle;  // x_1^i x_2^k of degree below l, by increasing degree
  NormalFormSet normal_forms;      // triangle plus the partner

  /// Triangle, lead and partner.
  std::vector<Monomial> basis() const {
    std::vector<Monomial> b = triangle;
    b.push_back(lead);
    b.push_back(partner);
    return b;
  }
  /// Monomials whose coefficients vanish after the reduction: x_1^i x_2^{q_1-1}
  /// in the triangle, then x_1^{q_2-1}.
  std::vector<Monomial> cancelled() const {
    std::vector<Monomial> out;
    for (const auto& m : triangle)
      if (m[1] == q1 - 1 && q1 >= 1) out.push_back(m);
    Monomial x1(2);
    x1[0] = q2 - 1;
    if (std::find(out.begin(), out.end(), x1) == out.end()) out.push_back(x1);
    return out;
  }
};

inline TwoVariableShape two_variable_shape(int p1, int p2) {
  if (p1 <= 0 || p2 <= p1) throw InvalidInput("two-variable shape needs 0 < p1 < p2");
  TwoVariableShape s;
  s.l = std::lcm(static_cast<long>(p1), static_cast<long>(p2));
  s.q2 = static_cast<int>(s.l / p1);
  s.q1 = static_cast<int>(s.l / p2);
  s.lead = Monomial::unit(2, 0, s.q2);
  s.partner = Monomial::unit(2, 1, s.q1);
  s.normal_forms.weights = {p1, p2};
  for (int k = 0; k < s.q1; ++k)
    for (int i = 0; static_cast<long>(i) * p1 + static_cast<long>(k) * p2 < s.l; ++i) {
      Monomial m(2);
      m[0] = i;
      m[1] = k;
      s.triangle.push_back(m);
      s.normal_forms.by_degree.emplace(m.weighted_degree(s.normal_forms.weights), m);
    }
  std::sort(s.triangle.begin(), s.triangle.end(), [&](const Monomial& a, const Monomial& b) {
    return a.weighted_degree(s.normal_forms.weights) < b.weighted_degree(s.normal_forms.weights);
  });
  s.normal_forms.by_degree.emplace(s.l, s.partner);
  return s;
}

/// Reduces the stage-2 relation, updating f_1 and f_2 accordingly.
inline MultiPoly two_variable_reduce(GeneratorSystem& gs, const MultiPoly& f2, const TwoVariableShape& shape) {
  MultiPoly f = f2.resized(2);
  const FieldElement a2 = f.coefficient(shape.partner);
  if (a2.is_zero()) throw NoRelation("the stage-2 relation has no " + to_string(shape.partner, indexed_names(2)) + " term");

  // x_2 -> x_2 - S(x_1) with S = sum_i a_{i, q_1 - 1} x_1^i / (a_2 q_1).
  MultiPoly s(2);
  const FieldElement denom = a2 * FieldElement(shape.q1);
  for (const auto& [m, c] : f.terms())
    if (m[1] == shape.q1 - 1 && m[0] < shape.q2) s.add_term(Monomial::unit(2, 0, m[0]), c / denom);
  if (!s.is_zero()) {
    f = substitute_variable(f, 1, s, Sign::Minus);
    gs.substitute(1, s, Sign::Minus);
  }

  // x_1 -> x_1 - b with b = a_{q_2 - 1, 0} / q_2.
  const FieldElement a = f.coefficient(Monomial::unit(2, 0, shape.q2 - 1));
  const FieldElement lead = f.coefficient(shape.lead);
  if (!a.is_zero() && shape.q2 >= 1) {
    MultiPoly b = MultiPoly::constant(2, a / (lead * FieldElement(shape.q2)));
    f = substitute_variable(f, 0, b, Sign::Minus);
    gs.substitute(0, b, Sign::Minus);
  }
  if (!gs.certifies(f)) throw NoRelation("the reduced stage-2 relation does not vanish on the curve");
  return f;
}

/// Cancellation targets n * m / x_j for n in N with deg n < p_j, by decreasing
/// degree of n.
inline std::vector<std::pair<Monomial, Monomial>> tschirnhaus_targets(const NormalFormSet& n, const GoodMonomial& g) {
  std::vector<std::pair<Monomial, Monomial>> out;
  auto low = n.below(n.weights.at(g.var));
  for (auto it = low.rbegin(); it != low.rend(); ++it) out.emplace_back(*it, g.target(*it));
  return out;
}

/// Removes the coefficients of all targets from the stage-j relation, updating
/// f_j. `f` must be supported on {m} and N with coefficient 1 at m.
inline MultiPoly tschirnhaus_reduce(GeneratorSystem& gs, MultiPoly f, const NormalFormSet& n, const GoodMonomial& g,
                                    const RelationOptions& opt = {}) {
  std::vector<Monomial> basis = n.monomials();
  basis.push_back(g.monomial);
  const FieldElement k(g.exponent);
  for (const auto& [nf, target] : tschirnhaus_targets(n, g)) {
    const FieldElement c = f.coefficient(target);
    if (c.is_zero()) continue;
    MultiPoly r = MultiPoly::term(nf, c / k);
    gs.substitute(g.var, r, Sign::Minus);
    f = find_relation(gs, basis, g.monomial, opt);
    if (!f.coefficient(target).is_zero())
      throw NoRelation("substitution failed to cancel the coefficient of " + to_string(target, indexed_names(n.nvars())));
  }
  return f;
}

}  // namespace twc
