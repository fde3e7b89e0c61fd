#pragma once

/**
 * Normal form sets and good monomials.
 *
 * For weights (p_1, ..., p_j) a normal form set holds exactly one monomial per
 * pole number up to a bound. A monomial m = m' * x_j^k is good with respect to
 * N when
 *   (i)  the element of N with degree deg m does not involve x_j, and
 *   (ii) n * m / x_j lies in N for every n in N with deg n < p_j.
 */

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "twcurve/errors.hpp"
#include "twcurve/multipoly.hpp"
#include "twcurve/semigroup.hpp"

namespace twc {

struct NormalFormSet {
  std::vector<int> weights;
  std::map<long, Monomial> by_degree;

  std::size_t nvars() const { return weights.size(); }
  long degree_of(const Monomial& m) const { return m.weighted_degree(weights); }
  std::optional<Monomial> at(long degree) const {
    auto it = by_degree.find(degree);
    if (it == by_degree.end()) return std::nullopt;
    return it->second;
  }
  bool contains(const Monomial& m) const {
    auto it = by_degree.find(degree_of(m));
    return it != by_degree.end() && it->second == m;
  }
  std::vector<Monomial> monomials() const {
    std::vector<Monomial> out;
    for (const auto& [d, m] : by_degree) out.push_back(m);
    return out;
  }
  /// Elements of degree below `bound`, by increasing degree.
  std::vector<Monomial> below(long bound) const {
    std::vector<Monomial> out;
    for (const auto& [d, m] : by_degree)
      if (d < bound) out.push_back(m);
    return out;
  }
  friend bool operator==(const NormalFormSet&, const NormalFormSet&) = default;
};

struct GoodMonomial {
  Monomial monomial;
  std::size_t var = 0;  // index of x_j
  int exponent = 0;     // k in m = m' * x_j^k

  /// n * m / x_j
  Monomial target(const Monomial& n) const { return n * monomial / Monomial::unit(monomial.nvars(), var); }
  friend bool operator==(const GoodMonomial&, const GoodMonomial&) = default;
};

struct NormalFormsAndGoodMonomial {
  NormalFormSet normal_forms;
  GoodMonomial good;
};

struct ConditionCheck {
  std::string name;
  bool passed = true;
  std::string detail;
};

namespace detail {
/// Lexicographically smallest monomial of weighted degree d, if any.
inline std::optional<Monomial> lex_smallest(std::span<const int> weights, long d) {
  auto all = monomials_of_wdeg(weights, d);
  if (all.empty()) return std::nullopt;
  return all.back();
}
}  // namespace detail

/// Checks both good-monomial conditions plus the structural requirements on N:
/// every key matches its monomial's degree, every pole number below deg m has a
/// normal form, and m itself is not a normal form.
inline std::vector<ConditionCheck> check_good_monomial(const NormalFormSet& n, const GoodMonomial& g) {
  std::vector<ConditionCheck> out;
  const std::size_t j = g.var;
  const auto& w = n.weights;
  const long dm = g.monomial.weighted_degree(w);
  const long pj = w.at(j);

  ConditionCheck shape{"normal forms have one monomial per pole number below deg m", true, ""};
  for (const auto& [d, mono] : n.by_degree)
    if (mono.nvars() != w.size() || mono.weighted_degree(w) != d) {
      shape.passed = false;
      shape.detail = "entry of degree " + std::to_string(d) + " has the wrong degree";
    }
  for (long d = 0; d < dm && shape.passed; ++d)
    if (!monomials_of_wdeg(w, d, 1).empty() && !n.at(d)) {
      shape.passed = false;
      shape.detail = "no normal form of pole number " + std::to_string(d);
    }
  out.push_back(shape);

  ConditionCheck involves{"m involves x_j", g.monomial[j] == g.exponent && g.exponent > 0, ""};
  if (!involves.passed) involves.detail = "recorded exponent does not match the monomial";
  out.push_back(involves);

  ConditionCheck c1{"(i) normal form of degree deg m does not involve x_j", true, ""};
  if (auto same = n.at(dm); !same) {
    c1.passed = false;
    c1.detail = "no normal form of degree " + std::to_string(dm);
  } else if (same->involves(j)) {
    c1.passed = false;
    c1.detail = "normal form " + to_string(*same, indexed_names(w.size())) + " involves x" + std::to_string(j + 1);
  }
  out.push_back(c1);

  ConditionCheck c2{"(ii) n*m/x_j is a normal form whenever deg n < p_j", true, ""};
  if (g.monomial[j] > 0) {
    for (const auto& nf : n.below(pj)) {
      Monomial t = g.target(nf);
      if (!n.contains(t)) {
        c2.passed = false;
        c2.detail = to_string(t, indexed_names(w.size())) + " is not a normal form";
        break;
      }
    }
  } else {
    c2.passed = false;
    c2.detail = "m does not involve x_j";
  }
  out.push_back(c2);
  return out;
}

inline bool all_passed(const std::vector<ConditionCheck>& checks) {
  return std::all_of(checks.begin(), checks.end(), [](const auto& c) { return c.passed; });
}

/// Normal forms below the good monomial together with a good monomial, for the
/// variables x_1..x_j with degrees `weights` (j >= 3 in the pipeline, but any
/// j >= 2 is accepted).
inline NormalFormsAndGoodMonomial normal_forms_and_good_monomial(const std::vector<int>& weights) {
  const std::size_t j = weights.size();
  if (j < 2) throw InvalidInput("normal forms need at least two variables");
  for (std::size_t i = 1; i < j; ++i)
    if (weights[i] <= weights[i - 1]) throw InvalidInput("degrees must be strictly increasing");
  const std::size_t xj = j - 1;
  const long pj = weights[xj];

  std::map<long, Monomial> base;
  for (long d = 0; d < pj; ++d)
    if (auto m = detail::lex_smallest(weights, d)) base.emplace(d, *m);

  // The search terminates: some power x_j^q with q >= 2 has a degree that is also
  // reached without x_j, and from degree 2 p_j on no collision can occur.
  for (long s = 2 * pj - weights[0] + 1;; ++s) {
    auto mons = monomials_of_wdeg(weights, s);
    std::vector<Monomial> with, without;
    for (const auto& m : mons) (m.involves(xj) ? with : without).push_back(m);
    if (with.empty() || without.empty()) continue;
    // Minimal x_j exponent, then lexicographically smallest.
    Monomial m = *std::min_element(with.begin(), with.end(), [&](const Monomial& a, const Monomial& b) {
      if (a[xj] != b[xj]) return a[xj] < b[xj];
      return a < b;
    });
    GoodMonomial good{m, xj, m[xj]};
    NormalFormSet n{weights, base};
    n.by_degree[s] = without.back();
    bool collision = false;
    for (const auto& [d, nf] : base) {
      Monomial t = good.target(nf);
      auto [it, inserted] = n.by_degree.emplace(t.weighted_degree(weights), t);
      if (!inserted && it->second != t) {
        collision = true;
        break;
      }
    }
    if (collision) continue;
    for (long d = 0; d < s; ++d)
      if (!n.by_degree.count(d))
        if (auto mono = detail::lex_smallest(weights, d)) n.by_degree.emplace(d, *mono);
    if (!all_passed(check_good_monomial(n, good))) continue;
    return {std::move(n), std::move(good)};
  }
}

}  // namespace twc
