#pragma once

#include <algorithm>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "twcurve/errors.hpp"
#include "twcurve/number_field.hpp"

namespace twc {

enum class RootStatus { ResolvedFully, Unresolved };

/// Roots of x^d = c found in the field of c. When the status is Unresolved the
/// list may be incomplete and `pending_*` names the equation left open.
struct RootSet {
  std::vector<FieldElement> roots;
  RootStatus status = RootStatus::ResolvedFully;
  FieldElement pending_constant;
  unsigned pending_degree = 0;

  std::string pending_equation() const {
    return "x^" + std::to_string(pending_degree) + " = " + pending_constant.to_string();
  }
};

namespace detail {

inline std::vector<Rational> rational_nth_roots(const Rational& c, unsigned d) {
  bool negative = sgn(c) < 0;
  if (negative && d % 2 == 0) return {};
  auto num = exact_root(abs(c.get_num()), d);
  auto den = exact_root(c.get_den(), d);
  if (!num || !den) return {};
  Rational r = make_rational(*num, *den);
  if (negative) return {-r};
  if (d % 2 == 0) return {r, -r};
  return {r};
}

}  // namespace detail

/// Solves x^d = c. Over Q the answer is always complete. Over Q(a) only the
/// rational roots of a rational c and the caller's `proposals` (each verified
/// exactly) are found; the result is complete only once d roots are known.
inline RootSet nth_root_in_field(const FieldElement& c, unsigned d, std::span<const FieldElement> proposals = {}) {
  if (c.is_zero()) throw InvalidInput("nth_root_in_field: c must be nonzero");
  if (d == 0) throw InvalidInput("nth_root_in_field: d must be positive");
  RootSet out;
  auto add = [&](const FieldElement& r) {
    for (const auto& have : out.roots)
      if (have == r) return;
    out.roots.push_back(r);
  };
  if (d == 1) add(c);
  if (c.is_rational())
    for (const auto& r : detail::rational_nth_roots(c.rational_value(), d)) {
      if (c.field().is_rationals())
        add(FieldElement(r));
      else
        add(FieldElement(c.field(), {r}));
    }
  for (const auto& p : proposals)
    if (p.pow(static_cast<long>(d)) == c) add(p);
  std::sort(out.roots.begin(), out.roots.end(),
            [](const FieldElement& a, const FieldElement& b) { return canonical_less(a, b); });
  bool complete = c.field().is_rationals() || out.roots.size() == d;
  if (!complete) {
    out.status = RootStatus::Unresolved;
    out.pending_constant = c;
    out.pending_degree = d;
  }
  return out;
}

}  // namespace twc
