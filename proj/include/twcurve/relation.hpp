#pragma once

// Linear relations among monomials in the generators, found from Laurent
// expansions and certified by exact reduction modulo the curve.

#include <algorithm>
#include <cstddef>
#include <string>
#include <vector>

#include "twcurve/errors.hpp"
#include "twcurve/generator_system.hpp"
#include "twcurve/linear_algebra.hpp"
#include "twcurve/multipoly.hpp"

namespace twc {

struct RelationOptions {
  long max_relative_precision = 400;
};

/// The unique (up to scale) polynomial sum_b c_b b(f_1, ..., f_j) = 0 supported
/// on `basis`, normalized so that the coefficient of `lead` is 1.
///
/// Candidate relations come from the kernel of the coefficient matrix of the
/// series of the basis monomials between T^{-D} and T^{-D+R}, where D is the
/// largest degree in the basis. R starts at |basis| + D + 16 and doubles up to
/// the cap. A one-dimensional kernel is accepted only after exact certification.
inline MultiPoly find_relation(const GeneratorSystem& gs, const std::vector<Monomial>& basis, const Monomial& lead,
                               const RelationOptions& opt = {}) {
  if (basis.empty()) throw InvalidInput("empty monomial basis");
  const std::size_t nv = lead.nvars();
  const auto& w = gs.degrees();
  std::vector<int> weights(w.begin(), w.begin() + static_cast<long>(nv));
  auto lead_it = std::find(basis.begin(), basis.end(), lead);
  if (lead_it == basis.end()) throw InvalidInput("leading monomial is not in the basis");
  const std::size_t lead_idx = static_cast<std::size_t>(lead_it - basis.begin());

  long top = 0;
  for (const auto& b : basis) top = std::max(top, b.weighted_degree(weights));
  const long cap = std::max<long>(opt.max_relative_precision, 1);
  long rel = std::min<long>(static_cast<long>(basis.size()) + top + 16, cap);
  std::size_t last_dim = 0;

  for (;;) {
    const long precision = -top + rel;
    std::vector<LaurentSeries> cols;
    try {
      for (const auto& b : basis) cols.push_back(gs.monomial_series(b, precision));
    } catch (const PrecisionExhausted& e) {
      if (last_dim > 1)
        throw NonUniqueRelation("relations on this support form a space of dimension " + std::to_string(last_dim) +
                                " up to the precision reached (" + e.what() + ")");
      throw NoRelation(std::string("no relation could be certified before the precision ran out: ") + e.what());
    }
    Matrix<FieldElement> a(static_cast<std::size_t>(rel), basis.size());
    for (std::size_t c = 0; c < basis.size(); ++c)
      for (long row = 0; row < rel; ++row) a(static_cast<std::size_t>(row), c) = cols[c].coefficient(-top + row);
    auto ker = kernel_basis(a);
    if (ker.empty()) throw NoRelation("no linear relation among the " + std::to_string(basis.size()) + " monomials");
    last_dim = ker.size();
    if (ker.size() == 1) {
      const auto& v = ker.front();
      if (v[lead_idx].is_zero())
        throw NoRelation("the relation on this support does not involve the leading monomial");
      FieldElement scale = v[lead_idx].inverse();
      MultiPoly p(nv);
      for (std::size_t c = 0; c < basis.size(); ++c)
        if (!v[c].is_zero()) p.add_term(basis[c], scale * v[c]);
      if (gs.certifies(p)) return p;
    }
    if (rel >= cap) {
      if (ker.size() > 1)
        throw NonUniqueRelation("relations on this support form a space of dimension " + std::to_string(ker.size()) +
                                " at relative precision " + std::to_string(rel));
      throw NoRelation("the candidate relation at relative precision " + std::to_string(rel) +
                       " does not vanish on the curve");
    }
    rel = std::min(2 * rel, cap);
  }
}

}  // namespace twc
