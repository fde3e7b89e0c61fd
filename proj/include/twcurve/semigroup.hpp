#pragma once

/**
 * Numerical semigroups <p_1, ..., p_k> and enumeration of monomials of a given
 * weighted degree.
 *
 * Gaps and the conductor come from the Apéry set with respect to the smallest
 * generator, computed as shortest paths on the residue graph modulo that
 * generator.
 */

#include <algorithm>
#include <cstddef>
#include <functional>
#include <limits>
#include <numeric>
#include <optional>
#include <queue>
#include <span>
#include <string>
#include <vector>

#include "twcurve/errors.hpp"
#include "twcurve/multipoly.hpp"

namespace twc {

namespace detail {
inline void check_generators(std::span<const int> gens) {
  if (gens.empty()) throw InvalidInput("a semigroup needs at least one generator");
  for (int g : gens)
    if (g <= 0) throw InvalidInput("semigroup generators must be positive");
  int g = 0;
  for (int v : gens) g = std::gcd(g, v);
  if (g != 1) {
    std::string list;
    for (int v : gens) list += (list.empty() ? "" : ", ") + std::to_string(v);
    throw GcdNotOne("pole orders {" + list + "} have gcd " + std::to_string(g) +
                    "; they cannot be the pole semigroup of a single place");
  }
}

/// reach[n] is true when n is a non-negative combination of `weights`.
inline std::vector<bool> representable_up_to(std::span<const int> weights, int bound) {
  std::vector<bool> reach(static_cast<std::size_t>(std::max(bound, 0)) + 1, false);
  reach[0] = true;
  for (int w : weights)
    for (int n = w; n <= bound; ++n)
      if (reach[static_cast<std::size_t>(n - w)]) reach[static_cast<std::size_t>(n)] = true;
  return reach;
}
}  // namespace detail

/// Exponent vectors e with sum e_i * weights[i] = d, in descending
/// lexicographic order (x_1 most significant), at most `limit` of them.
inline std::vector<Monomial> monomials_of_wdeg(std::span<const int> weights, long d,
                                               std::size_t limit = static_cast<std::size_t>(-1)) {
  for (int w : weights)
    if (w <= 0) throw InvalidInput("weights must be positive");
  std::vector<Monomial> out;
  if (d < 0 || weights.empty()) return out;
  const std::size_t n = weights.size();
  // Suffix reachability avoids exploring dead branches.
  std::vector<std::vector<bool>> suffix(n + 1);
  for (std::size_t i = 0; i <= n; ++i)
    suffix[i] = detail::representable_up_to(weights.subspan(i), static_cast<int>(d));
  Monomial cur(n);
  std::function<void(std::size_t, long)> rec = [&](std::size_t i, long rest) {
    if (out.size() >= limit) return;
    if (i == n) {
      if (rest == 0) out.push_back(cur);
      return;
    }
    for (long e = rest / weights[i]; e >= 0; --e) {
      long r = rest - e * weights[i];
      if (!suffix[i + 1][static_cast<std::size_t>(r)]) continue;
      cur[i] = static_cast<int>(e);
      rec(i + 1, r);
    }
    cur[i] = 0;
  };
  if (suffix[0][static_cast<std::size_t>(d)]) rec(0, d);
  return out;
}

class NumericalSemigroup {
 public:
  /// The semigroup generated by `generators` (any order, repeats allowed).
  explicit NumericalSemigroup(std::vector<int> generators) {
    detail::check_generators(generators);
    std::sort(generators.begin(), generators.end());
    generators.erase(std::unique(generators.begin(), generators.end()), generators.end());
    given_ = generators;
    const int m = generators.front();
    // Dijkstra on residues modulo m.
    const long inf = std::numeric_limits<long>::max();
    std::vector<long> dist(static_cast<std::size_t>(m), inf);
    dist[0] = 0;
    using Item = std::pair<long, int>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
    pq.push({0, 0});
    while (!pq.empty()) {
      auto [d, r] = pq.top();
      pq.pop();
      if (d != dist[static_cast<std::size_t>(r)]) continue;
      for (int g : generators) {
        int s = (r + g) % m;
        if (d + g < dist[static_cast<std::size_t>(s)]) {
          dist[static_cast<std::size_t>(s)] = d + g;
          pq.push({d + g, s});
        }
      }
    }
    apery_ = dist;
    long frobenius = *std::max_element(apery_.begin(), apery_.end()) - m;
    conductor_ = frobenius < 0 ? 0 : frobenius + 1;
    for (long n = 1; n < conductor_; ++n)
      if (!contains(n)) gaps_.push_back(n);
    // Minimal generators: the elements that are not sums of two nonzero elements.
    for (int g : generators) {
      bool decomposable = false;
      for (long a = 1; a <= g / 2 && !decomposable; ++a) decomposable = contains(a) && contains(g - a);
      if (!decomposable) minimal_.push_back(g);
    }
  }

  const std::vector<int>& generators() const { return given_; }
  const std::vector<int>& minimal_generators() const { return minimal_; }
  /// apery_set()[r] is the least element congruent to r modulo the multiplicity.
  const std::vector<long>& apery_set() const { return apery_; }
  int multiplicity() const { return given_.front(); }
  long conductor() const { return conductor_; }
  long frobenius_number() const { return conductor_ - 1; }
  const std::vector<long>& gaps() const { return gaps_; }
  std::size_t genus() const { return gaps_.size(); }

  bool contains(long n) const {
    if (n < 0) return false;
    const int m = multiplicity();
    return n >= apery_[static_cast<std::size_t>(n % m)];
  }

  /// Exponents over the minimal generators summing to n (the lexicographically
  /// largest representation), or nullopt for a non-member.
  std::optional<Monomial> witness(long n) const {
    if (!contains(n)) return std::nullopt;
    return monomials_of_wdeg(minimal_, n, 1).front();
  }

  /// Members in [0, bound).
  std::vector<long> members_below(long bound) const {
    std::vector<long> out;
    for (long n = 0; n < bound; ++n)
      if (contains(n)) out.push_back(n);
    return out;
  }

 private:
  std::vector<int> given_, minimal_;
  std::vector<long> apery_;
  long conductor_ = 0;
  std::vector<long> gaps_;
};

inline NumericalSemigroup sg_build(const std::vector<int>& generators) { return NumericalSemigroup(generators); }

/// Sorted minimal generating set of the semigroup generated by `orders`.
inline std::vector<int> minimal_generators(const std::vector<int>& orders) {
  return NumericalSemigroup(orders).minimal_generators();
}

}  // namespace twc
