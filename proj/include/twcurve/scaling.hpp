#pragma once

/**
 * Isomorphisms between canonical curves sharing normal forms and good
 * monomials, which are diagonal scalings x_i -> lambda_i x_i.
 *
 * Candidates come from the coefficient equations lambda^{e(u) - e(m)} = a_u / b_u
 * read off the two equation systems, solved through the Smith normal form of the
 * exponent matrix. The equations need not generate the whole curve ideal, so
 * every candidate is then verified:
 *   - fast filter: each G_j(lambda x), renormalized, equals F_j;
 *   - local: a reparametrization u(T) = c_1 T + c_2 T^2 + ... with
 *     g_i(u(T)) = lambda_i f_i(T) exists to truncation N and to 2N;
 *   - global (decisive): with X, Y expressing the coordinates of the second
 *     curve through its generators, sigma = (X(lambda f), Y(lambda f)) maps the
 *     first curve into the second and pulls g_i back to lambda_i f_i, both
 *     checked exactly modulo the first curve.
 */

#include <algorithm>
#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "twcurve/curve_reduction.hpp"
#include "twcurve/errors.hpp"
#include "twcurve/function_field.hpp"
#include "twcurve/integer_matrix.hpp"
#include "twcurve/nth_root.hpp"
#include "twcurve/rational.hpp"
#include "twcurve/rational_function.hpp"
#include "twcurve/tw_curve.hpp"

namespace twc {

struct ScalingMap {
  std::vector<FieldElement> lambda;

  static ScalingMap identity(std::size_t r) { return {std::vector<FieldElement>(r, FieldElement(1))}; }
  std::size_t size() const { return lambda.size(); }
  bool is_identity() const {
    return std::all_of(lambda.begin(), lambda.end(), [](const FieldElement& v) { return v.is_one(); });
  }
  ScalingMap inverse() const {
    ScalingMap out;
    for (const auto& v : lambda) out.lambda.push_back(v.inverse());
    return out;
  }
  /// Componentwise product.
  friend ScalingMap operator*(const ScalingMap& a, const ScalingMap& b) {
    if (a.size() != b.size()) throw InvalidInput("scalings of different lengths");
    ScalingMap out;
    for (std::size_t i = 0; i < a.size(); ++i) out.lambda.push_back(a.lambda[i] * b.lambda[i]);
    return out;
  }
  friend bool operator==(const ScalingMap& a, const ScalingMap& b) { return a.lambda == b.lambda; }
  friend bool canonical_less(const ScalingMap& a, const ScalingMap& b) {
    return std::lexicographical_compare(a.lambda.begin(), a.lambda.end(), b.lambda.begin(), b.lambda.end(),
                                        [](const FieldElement& x, const FieldElement& y) { return canonical_less(x, y); });
  }
  std::string to_string() const {
    std::string s = "(";
    for (std::size_t i = 0; i < lambda.size(); ++i) s += (i ? ", " : "") + lambda[i].to_string();
    return s + ")";
  }
};

/// lambda^exponents = constant.
struct MultiplicativeEquation {
  std::vector<long> exponents;
  FieldElement constant;
  std::size_t stage = 0;  // the relation F_j it came from
  Monomial monomial;      // the monomial u it came from
};

struct MultiplicativeSystem {
  std::size_t r = 0;
  std::vector<MultiplicativeEquation> equations;
  bool inconsistent = false;  // a support mismatch or a trivial equation 1 = c with c != 1
  std::string reason;

  bool satisfied_by(const ScalingMap& l) const {
    if (inconsistent) return false;
    for (const auto& eq : equations) {
      FieldElement v(1);
      for (std::size_t i = 0; i < r; ++i)
        if (eq.exponents[i] != 0) v = v * l.lambda[i].pow(eq.exponents[i]);
      if (!(v == eq.constant)) return false;
    }
    return true;
  }
};

inline void check_same_certificates(const TWCurve& a, const TWCurve& b) {
  if (a.degrees != b.degrees) throw MismatchedCertificates("the curves have different generator degrees");
  if (a.equations.size() != b.equations.size()) throw MismatchedCertificates("different numbers of equations");
  for (std::size_t k = 0; k < a.equations.size(); ++k) {
    const auto& ea = a.equations[k];
    const auto& eb = b.equations[k];
    if (!(ea.normal_forms == eb.normal_forms) || !(ea.lead == eb.lead) || ea.good != eb.good || ea.partner != eb.partner)
      throw MismatchedCertificates("normal forms or leading monomials differ at stage " + std::to_string(ea.j));
  }
}

/// Equations on lambda forcing G_j(lambda x) / lambda^{lead} = F_j for every j,
/// where F_j belongs to `a` and G_j to `b`.
inline MultiplicativeSystem scaling_system(const TWCurve& a, const TWCurve& b) {
  check_same_certificates(a, b);
  MultiplicativeSystem sys;
  sys.r = a.r;
  for (std::size_t k = 0; k < a.equations.size(); ++k) {
    const auto& fa = a.equations[k].polynomial;
    const auto& gb = b.equations[k].polynomial;
    const Monomial& lead = a.equations[k].lead;
    const std::size_t j = a.equations[k].j;
    std::vector<Monomial> support;
    for (const auto& [m, c] : fa.terms()) support.push_back(m);
    for (const auto& [m, c] : gb.terms())
      if (fa.coefficient(m).is_zero()) support.push_back(m);
    std::sort(support.begin(), support.end());
    for (const auto& m : support) {
      if (m == lead) continue;
      const FieldElement ca = fa.coefficient(m), cb = gb.coefficient(m);
      if (ca.is_zero() != cb.is_zero()) {
        sys.inconsistent = true;
        sys.reason = "support mismatch at " + to_string(m, indexed_names(j)) + " in F" + std::to_string(j);
        return sys;
      }
      MultiplicativeEquation eq{std::vector<long>(a.r, 0), ca / cb, j, m};
      bool trivial = true;
      for (std::size_t i = 0; i < j; ++i) {
        eq.exponents[i] = static_cast<long>(m[i]) - lead[i];
        if (eq.exponents[i] != 0) trivial = false;
      }
      if (trivial) {
        if (!eq.constant.is_one()) {
          sys.inconsistent = true;
          sys.reason = "coefficients of " + to_string(m, indexed_names(j)) + " differ";
          return sys;
        }
        continue;
      }
      sys.equations.push_back(std::move(eq));
    }
  }
  return sys;
}

enum class SolutionStatus { Empty, Finite, Unresolved };

inline std::string to_string(SolutionStatus s) {
  switch (s) {
    case SolutionStatus::Empty: return "empty";
    case SolutionStatus::Finite: return "finite";
    case SolutionStatus::Unresolved: return "unresolved";
  }
  return "?";
}

/// All solutions of the system found by root extraction.
struct SystemSolutions {
  SolutionStatus status = SolutionStatus::Empty;
  std::vector<ScalingMap> solutions;  // canonical order
  std::vector<std::string> pending;   // open root equations when Unresolved
};

/// Proposed roots for equations over Q(a): the powers +-a^k, 0 < k < deg.
inline std::vector<FieldElement> generator_power_proposals(const NumberField& field) {
  std::vector<FieldElement> out;
  if (field.is_rationals()) return out;
  const FieldElement a = FieldElement::generator(field);
  for (int k = 1; k < field.degree(); ++k) {
    out.push_back(a.pow(k));
    out.push_back(-a.pow(k));
  }
  return out;
}

/// Solutions in `field` (Q by default). Over Q(a) rational right-hand sides are
/// embedded so that their roots are sought in Q(a), with the powers of a as
/// proposals; anything left open is reported as pending.
inline SystemSolutions solve_system(const MultiplicativeSystem& sys, const NumberField& field = {}) {
  SystemSolutions out;
  if (sys.inconsistent) return out;
  const std::size_t r = sys.r, e = sys.equations.size();
  IntegerMatrix m(e, r);
  for (std::size_t k = 0; k < e; ++k)
    for (std::size_t i = 0; i < r; ++i) m(k, i) = sys.equations[k].exponents[i];
  SmithForm snf = smith_normal_form(m);
  std::size_t rank = 0;
  while (rank < std::min(e, r) && snf.D(rank, rank) != 0) ++rank;
  if (rank < r)
    throw InfiniteFamily("the scaling equations have rank " + std::to_string(rank) + " < " + std::to_string(r) +
                         "; the solutions form a positive-dimensional family");
  // With lambda = mu^V the system becomes mu_k^{d_k} = prod_l c_l^{U_kl}.
  auto rhs = [&](std::size_t k) {
    FieldElement v(1);
    for (std::size_t l = 0; l < e; ++l) {
      const Integer& u = snf.U(k, l);
      if (u != 0) v = v * sys.equations[l].constant.pow(u.get_si());
    }
    return v;
  };
  for (std::size_t k = rank; k < e; ++k)
    if (!rhs(k).is_one()) return out;
  std::vector<std::vector<FieldElement>> choices(r);
  for (std::size_t k = 0; k < r; ++k) {
    FieldElement c = rhs(k);
    if (!field.is_rationals() && c.field().is_rationals()) c = FieldElement(field, {c.rational_value()});
    const auto proposals = generator_power_proposals(field);
    RootSet roots = nth_root_in_field(c, static_cast<unsigned>(snf.D(k, k).get_ui()), proposals);
    if (roots.status == RootStatus::Unresolved) out.pending.push_back(roots.pending_equation());
    if (roots.roots.empty() && roots.status == RootStatus::ResolvedFully) return out;
    choices[k] = roots.roots;
  }
  std::vector<FieldElement> mu(r, FieldElement(1));
  std::function<void(std::size_t)> rec = [&](std::size_t k) {
    if (k == r) {
      ScalingMap l;
      for (std::size_t i = 0; i < r; ++i) {
        FieldElement v(1);
        for (std::size_t t = 0; t < r; ++t) {
          const Integer& p = snf.V(i, t);
          if (p != 0) v = v * mu[t].pow(p.get_si());
        }
        l.lambda.push_back(v);
      }
      if (sys.satisfied_by(l)) out.solutions.push_back(std::move(l));
      return;
    }
    for (const auto& c : choices[k]) {
      mu[k] = c;
      rec(k + 1);
    }
  };
  rec(0);
  std::sort(out.solutions.begin(), out.solutions.end(),
            [](const ScalingMap& a, const ScalingMap& b) { return canonical_less(a, b); });
  out.solutions.erase(std::unique(out.solutions.begin(), out.solutions.end()), out.solutions.end());
  out.status = !out.pending.empty() ? SolutionStatus::Unresolved
               : out.solutions.empty() ? SolutionStatus::Empty
                                       : SolutionStatus::Finite;
  return out;
}

/// Outcome of the order-by-order reparametrization at one truncation.
struct LocalCheck {
  long truncation = 0;
  bool consistent = false;
  std::vector<FieldElement> u;  // c_1, c_2, ... found before stopping
  std::string detail;
};

namespace detail {
/// Integers s_i with sum s_i p_i = gcd(p), folded left to right.
inline std::vector<long> bezout(const std::vector<int>& p) {
  std::vector<long> s{1};
  Integer g = p.front();
  for (std::size_t i = 1; i < p.size(); ++i) {
    ExtendedGcd eg = extended_gcd(g, Integer(p[i]));
    for (auto& v : s) v *= eg.s.get_si();
    s.push_back(eg.t.get_si());
    g = eg.g;
  }
  return s;
}
}  // namespace detail

/// Solves g_i(u(T)) = lambda_i f_i(T) for u = c_1 T + ... + c_n T^n, where f_i
/// are the generators of `a` and g_i those of `b`. Each c_k is fixed by one
/// linear equation and must satisfy the equations from all other generators.
inline LocalCheck local_reparametrization(const GeneratorSystem& a, const GeneratorSystem& b, const ScalingMap& l,
                                          long n) {
  LocalCheck out;
  out.truncation = n;
  const std::size_t r = a.size();
  const auto& p = a.degrees();
  std::vector<LaurentSeries> fs, gs;
  for (std::size_t i = 0; i < r; ++i) {
    fs.push_back(l.lambda[i] * a.series(i, -p[i] + n));
    gs.push_back(b.series(i, -p[i] + n));
  }
  // Leading coefficients: c_1^{-p_i} = lambda_i kappa_i / kappa'_i.
  std::vector<FieldElement> rho;
  for (std::size_t i = 0; i < r; ++i) rho.push_back(fs[i].leading_coefficient() / gs[i].leading_coefficient());
  auto s = detail::bezout(p);
  FieldElement c1(1);
  for (std::size_t i = 0; i < r; ++i) c1 = c1 * rho[i].pow(-s[i]);
  for (std::size_t i = 0; i < r; ++i)
    if (!(c1.pow(-p[i]) == rho[i])) {
      out.detail = "leading coefficients admit no common c_1 (generator f" + std::to_string(i + 1) + ")";
      return out;
    }
  out.u.push_back(c1);

  // w[n - nlow][m] = coefficient of T^m in (u / (c_1 T))^n = (1 + delta)^n.
  const long nlow = -p.back(), nhigh = n - 1 - p.front();
  const std::size_t width = static_cast<std::size_t>(nhigh - nlow + 1);
  std::vector<std::vector<FieldElement>> w(width, std::vector<FieldElement>{FieldElement(1)});
  std::vector<FieldElement> delta{FieldElement(0)};  // delta[m] = c_{m+1} / c_1
  std::vector<FieldElement> c1pow(width);
  for (std::size_t t = 0; t < width; ++t) c1pow[t] = c1.pow(nlow + static_cast<long>(t));
  // Miller recurrence for the m-th coefficient with delta_m taken as zero.
  auto next_coeff = [&](std::size_t t, std::size_t m) {
    const FieldElement en(nlow + static_cast<long>(t) + 1);
    FieldElement acc(0);
    for (std::size_t jj = 1; jj < m; ++jj) {
      if (delta[jj].is_zero()) continue;
      acc = acc + (en * FieldElement(static_cast<long>(jj)) - FieldElement(static_cast<long>(m))) * delta[jj] * w[t][m - jj];
    }
    return acc / FieldElement(static_cast<long>(m));
  };

  for (long k = 2; k <= n; ++k) {
    const std::size_t m = static_cast<std::size_t>(k - 1);
    std::vector<FieldElement> tentative(width);
    for (std::size_t t = 0; t < width; ++t) tentative[t] = next_coeff(t, m);
    std::optional<FieldElement> dk;
    for (std::size_t i = 0; i < r; ++i) {
      const long e = -p[i] + k - 1;
      if (e > nhigh) continue;
      // Coefficient of T^e in g_i(u) with delta_m = 0.
      FieldElement val(0);
      for (long ex = -p[i]; ex <= e; ++ex) {
        const FieldElement gamma = gs[i].coefficient(ex);
        if (gamma.is_zero()) continue;
        const std::size_t t = static_cast<std::size_t>(ex - nlow);
        const std::size_t mm = static_cast<std::size_t>(e - ex);
        const FieldElement& coeff = mm == m ? tentative[t] : w[t][mm];
        val = val + gamma * c1pow[t] * coeff;
      }
      const std::size_t t0 = static_cast<std::size_t>(-p[i] - nlow);
      const FieldElement slope = gs[i].coefficient(-p[i]) * c1pow[t0] * FieldElement(-p[i]);
      const FieldElement resid = fs[i].coefficient(e) - val;
      if (!dk) {
        dk = resid / slope;
      } else if (!(resid == slope * *dk)) {
        out.detail = "no reparametrization: coefficient of T^" + std::to_string(e) + " for generator f" +
                     std::to_string(i + 1) + " cannot be matched at step " + std::to_string(k);
        return out;
      }
    }
    if (!dk) dk = FieldElement(0);
    delta.push_back(*dk);
    for (std::size_t t = 0; t < width; ++t)
      w[t].push_back(tentative[t] + FieldElement(nlow + static_cast<long>(t)) * *dk);
    out.u.push_back(*dk * c1);
  }
  out.consistent = true;
  return out;
}

/// sigma pulled back through the inverse of `b`: sigma(x), sigma(y) as rational
/// functions on the curve of `a`.
struct GlobalCheck {
  bool maps_curve = false;
  bool pulls_back_generators = false;
  bool passed() const { return maps_curve && pulls_back_generators; }
  std::string detail;
};

inline GlobalCheck global_certificate(const TWCurve& a, const TWCurve& b, const ScalingMap& l,
                                      const RatioOptions& opt = {}) {
  GlobalCheck out;
  const auto& ga = a.generators;
  const auto& gb = b.generators;
  BirationalInverse inv = birational_inverse(gb, opt);
  std::vector<RationalFunction> vals;
  for (std::size_t i = 0; i < a.r; ++i) vals.push_back(l.lambda[i] * ga.generator(i).expression);
  auto pull = [&](const GeneratorRatio& q) -> std::optional<RationalFunction> {
    auto [an, ad] = cleared_composition(q.numerator, vals);
    auto [bn, bd] = cleared_composition(q.denominator, vals);
    if (is_zero_mod_curve(bn, ga.curve())) return std::nullopt;
    return RationalFunction(an * bd, ad * bn);
  };
  auto sx = pull(inv.x), sy = pull(inv.y);
  if (!sx || !sy) {
    out.detail = "the coordinate map has a denominator vanishing on the curve";
    return out;
  }
  const RationalFunction sigma[] = {*sx, *sy};
  auto [fn, fd] = cleared_composition(gb.curve(), sigma);
  out.maps_curve = is_zero_mod_curve(fn, ga.curve());
  if (!out.maps_curve) {
    out.detail = "the coordinate map does not send the curve into the target curve";
    return out;
  }
  out.pulls_back_generators = true;
  for (std::size_t i = 0; i < b.r; ++i) {
    const RationalFunction& g = gb.generator(i).expression;
    auto [nn, nd] = cleared_composition(g.numerator(), sigma);
    auto [dn, dd] = cleared_composition(g.denominator(), sigma);
    if (is_zero_mod_curve(dn, ga.curve())) {
      out.pulls_back_generators = false;
      out.detail = "generator g" + std::to_string(i + 1) + " has a pole along the image";
      return out;
    }
    // g_i(sigma) = (nn / nd) / (dn / dd) must equal lambda_i f_i = fnum / fden.
    const RationalFunction& f = vals[i];
    MultiPoly lhs = nn * dd * f.denominator();
    MultiPoly rhs = f.numerator() * nd * dn;
    if (!is_zero_mod_curve(lhs - rhs, ga.curve())) {
      out.pulls_back_generators = false;
      out.detail = "generator g" + std::to_string(i + 1) + " does not pull back to lambda_" + std::to_string(i + 1) +
                   " f_" + std::to_string(i + 1);
      return out;
    }
  }
  return out;
}

struct ScalingVerdict {
  ScalingMap lambda;
  bool fast_filter = false;
  LocalCheck local_n, local_2n;
  std::optional<GlobalCheck> global;
  bool accepted = false;
  /// Local decisions at N and 2N coincide with each other and with the global one.
  bool local_global_agree() const {
    return local_n.consistent == local_2n.consistent && global && local_n.consistent == global->passed();
  }
  std::string detail;
};

struct VerifyOptions {
  long truncation = 0;  // 0 selects 2 * conductor + 2 * p_r + 8
  RatioOptions ratio;
  NumberField field;    // where solve_scalings looks for roots
};

inline long default_truncation(const TWCurve& tw) {
  return 2 * tw.generators.semigroup().conductor() + 2L * tw.degrees.back() + 8;
}

/// Renormalized G_j(lambda x) equals F_j for every j.
inline bool scaling_fast_filter(const TWCurve& a, const TWCurve& b, const ScalingMap& l, std::string* why = nullptr) {
  for (std::size_t k = 0; k < a.equations.size(); ++k) {
    const auto& eq = b.equations[k];
    MultiPoly scaled(eq.j);
    for (const auto& [m, c] : eq.polynomial.terms()) {
      FieldElement v = c;
      for (std::size_t i = 0; i < eq.j; ++i) v = v * l.lambda[i].pow(static_cast<long>(m[i]) - eq.lead[i]);
      scaled.add_term(m, v);
    }
    if (!(scaled == a.equations[k].polynomial)) {
      if (why) *why = "equation F" + std::to_string(eq.j) + " is not preserved";
      return false;
    }
  }
  return true;
}

/// Checks whether lambda defines an isomorphism from the curve of `a` to the
/// curve of `b` with g_i pulling back to lambda_i f_i.
inline ScalingVerdict verify_scaling(const TWCurve& a, const TWCurve& b, const ScalingMap& l,
                                     const VerifyOptions& opt = {}) {
  ScalingVerdict v;
  v.lambda = l;
  if (l.size() != a.r || l.size() != b.r) throw InvalidInput("scaling has the wrong length");
  for (const auto& x : l.lambda)
    if (x.is_zero()) throw InvalidInput("scaling factors must be nonzero");
  check_same_certificates(a, b);
  v.fast_filter = scaling_fast_filter(a, b, l, &v.detail);
  if (!v.fast_filter) return v;
  const long n = opt.truncation > 0 ? opt.truncation : default_truncation(a);
  v.local_n = local_reparametrization(a.generators, b.generators, l, n);
  v.local_2n = local_reparametrization(a.generators, b.generators, l, 2 * n);
  v.global = global_certificate(a, b, l, opt.ratio);
  v.accepted = v.global->passed();
  if (!v.accepted) v.detail = v.global->detail;
  if (v.local_n.consistent != v.local_2n.consistent)
    v.detail += (v.detail.empty() ? "" : "; ") + std::string("local decisions differ between N and 2N");
  return v;
}

struct SolutionSet {
  SolutionStatus status = SolutionStatus::Empty;
  MultiplicativeSystem system;
  std::vector<ScalingMap> candidates;  // solutions of the system
  std::vector<ScalingVerdict> verdicts;
  std::vector<ScalingMap> verified;
  std::vector<std::string> pending;
};

/// Isomorphisms from the curve of `a` to the curve of `b` fixing the places.
inline SolutionSet solve_scalings(const TWCurve& a, const TWCurve& b, const VerifyOptions& opt = {}) {
  SolutionSet out;
  out.system = scaling_system(a, b);
  SystemSolutions sol = solve_system(out.system, opt.field);
  out.candidates = sol.solutions;
  out.pending = sol.pending;
  for (const auto& c : out.candidates) {
    out.verdicts.push_back(verify_scaling(a, b, c, opt));
    if (out.verdicts.back().accepted) out.verified.push_back(c);
  }
  if (sol.status == SolutionStatus::Unresolved)
    out.status = SolutionStatus::Unresolved;
  else
    out.status = out.verified.empty() ? SolutionStatus::Empty : SolutionStatus::Finite;
  return out;
}

struct AutomorphismGroup {
  SolutionSet solutions;
  std::vector<ScalingMap> elements;
  std::vector<std::vector<std::size_t>> table;  // table[i][k] = index of elements[i] * elements[k]
  bool closed = true, has_inverses = true, commutative = true;
  bool is_group() const { return closed && has_inverses && commutative; }
};

inline AutomorphismGroup automorphism_group(const TWCurve& tw, const VerifyOptions& opt = {}) {
  AutomorphismGroup g;
  g.solutions = solve_scalings(tw, tw, opt);
  g.elements = g.solutions.verified;
  auto index_of = [&](const ScalingMap& s) -> std::optional<std::size_t> {
    for (std::size_t i = 0; i < g.elements.size(); ++i)
      if (g.elements[i] == s) return i;
    return std::nullopt;
  };
  const std::size_t n = g.elements.size();
  g.table.assign(n, std::vector<std::size_t>(n, n));
  for (std::size_t i = 0; i < n; ++i) {
    if (!index_of(g.elements[i].inverse())) g.has_inverses = false;
    for (std::size_t k = 0; k < n; ++k) {
      auto idx = index_of(g.elements[i] * g.elements[k]);
      if (!idx)
        g.closed = false;
      else
        g.table[i][k] = *idx;
      if (!(g.elements[i] * g.elements[k] == g.elements[k] * g.elements[i])) g.commutative = false;
    }
  }
  return g;
}

/// Generators lambda_i f_i on the same curve and place, rebuilt into canonical form.
inline TWCurve rescale(const TWCurve& tw, const ScalingMap& mu, const TWOptions& opt = {}) {
  std::vector<RationalFunction> gens;
  for (std::size_t i = 0; i < tw.r; ++i) gens.push_back(mu.lambda.at(i) * tw.generators.generator(i).expression);
  return build_tw(tw.generators.curve(), tw.generators.place(), gens, opt);
}

}  // namespace twc
