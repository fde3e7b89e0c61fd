#pragma once

/**
 * Newton–Puiseux expansion of a plane curve F(x, y) = 0 at a chosen place.
 *
 * Local coordinates are u = x - x0 (or 1/x at infinity) and v = y - y0 (or
 * 1/y). The kernel works with H(u, v), the polynomial obtained from F after
 * that change of coordinates, and produces u = T^e exactly together with a
 * power series v(T).
 *
 * The expansion has a singular phase driven by Newton polygons, followed by a
 * regular phase in which the remaining unknown is fixed by the implicit
 * function theorem and computed by Newton iteration with precision doubling.
 * Refinement continues the regular phase; earlier coefficients never change.
 */

#include <algorithm>
#include <cstddef>
#include <memory>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "twcurve/errors.hpp"
#include "twcurve/laurent_series.hpp"
#include "twcurve/multipoly.hpp"
#include "twcurve/number_field.hpp"
#include "twcurve/upoly.hpp"

namespace twc {

/// One coordinate of a place center: a field value or the point at infinity.
struct CenterCoordinate {
  bool at_infinity = false;
  FieldElement value;

  static CenterCoordinate finite(const FieldElement& v) { return {false, v}; }
  static CenterCoordinate infinity() { return {true, FieldElement(0)}; }
  std::string to_string() const { return at_infinity ? "infinity" : value.to_string(); }
  friend bool operator==(const CenterCoordinate& a, const CenterCoordinate& b) {
    return a.at_infinity == b.at_infinity && (a.at_infinity || a.value == b.value);
  }
};

struct PlaceCenter {
  CenterCoordinate x, y;

  static PlaceCenter affine(const FieldElement& x0, const FieldElement& y0) {
    return {CenterCoordinate::finite(x0), CenterCoordinate::finite(y0)};
  }
  static PlaceCenter infinity() { return {CenterCoordinate::infinity(), CenterCoordinate::infinity()}; }
  std::string to_string() const {
    if (x.at_infinity && y.at_infinity) return "infinity";
    return "(" + x.to_string() + ", " + y.to_string() + ")";
  }
  friend bool operator==(const PlaceCenter&, const PlaceCenter&) = default;
};

/// Selects a Newton polygon segment (by increasing slope; the index equal to the
/// number of segments selects the branch v = prefix exactly) and a root of its
/// characteristic polynomial (in canonical order).
struct BranchDecision {
  std::size_t segment = 0;
  std::size_t root = 0;
  friend bool operator==(const BranchDecision&, const BranchDecision&) = default;
};

/// Decision k applies to the k-th polygon stage; stages without a decision are
/// resolved automatically when only one place is possible.
using BranchChoice = std::vector<BranchDecision>;

inline constexpr long kDefaultMaxTerms = 400;

namespace detail {

/// Dense truncated power series arithmetic used by the regular phase.
using Dense = std::vector<FieldElement>;

inline Dense dense_mul(const Dense& a, const Dense& b, std::size_t n) {
  Dense out(n, FieldElement(0));
  for (std::size_t i = 0; i < a.size() && i < n; ++i) {
    if (a[i].is_zero()) continue;
    for (std::size_t j = 0; j < b.size() && i + j < n; ++j)
      if (!b[j].is_zero()) out[i + j] += a[i] * b[j];
  }
  return out;
}

inline Dense dense_inverse(const Dense& a, std::size_t n) {
  Dense out(n, FieldElement(0));
  FieldElement inv0 = a.at(0).inverse();
  out[0] = inv0;
  for (std::size_t k = 1; k < n; ++k) {
    FieldElement acc(0);
    for (std::size_t i = 1; i <= k && i < a.size(); ++i)
      if (!a[i].is_zero() && !out[k - i].is_zero()) acc += a[i] * out[k - i];
    out[k] = -(acc * inv0);
  }
  return out;
}

/// Coefficients in T (dense, low degree first) of H grouped by powers of w.
inline std::vector<Dense> coefficients_in_w(const MultiPoly& h) {
  std::vector<Dense> out(static_cast<std::size_t>(std::max(0, h.degree_in(1)) + 1));
  for (const auto& [m, c] : h.terms()) {
    Dense& d = out[static_cast<std::size_t>(m[1])];
    if (d.size() <= static_cast<std::size_t>(m[0])) d.resize(static_cast<std::size_t>(m[0]) + 1, FieldElement(0));
    d[static_cast<std::size_t>(m[0])] = c;
  }
  return out;
}

/// sum_j h_j(T) w^j mod T^n by Horner's rule.
inline Dense evaluate_in_w(const std::vector<Dense>& h, const Dense& w, std::size_t n) {
  Dense acc(n, FieldElement(0));
  for (std::size_t j = h.size(); j-- > 0;) {
    acc = dense_mul(acc, w, n);
    for (std::size_t i = 0; i < h[j].size() && i < n; ++i) acc[i] += h[j][i];
  }
  return acc;
}

inline std::string poly_string(const std::vector<FieldElement>& coeffs, const std::string& var) {
  bool rational = std::all_of(coeffs.begin(), coeffs.end(), [](const auto& c) { return c.is_rational(); });
  if (rational) {
    std::vector<Rational> q;
    for (const auto& c : coeffs) q.push_back(c.rational_value());
    return QPoly(q).to_string(var);
  }
  std::string out;
  for (std::size_t i = coeffs.size(); i-- > 0;) {
    if (coeffs[i].is_zero()) continue;
    if (!out.empty()) out += " + ";
    out += "(" + coeffs[i].to_string() + ")";
    if (i > 0) out += "*" + var + (i > 1 ? "^" + std::to_string(i) : "");
  }
  return out.empty() ? "0" : out;
}

/// Roots of a univariate polynomial that can be found in `field` (or in the
/// field of the coefficients),
/// in canonical order, plus the cofactor whose roots were not found.
struct FoundRoots {
  std::vector<FieldElement> roots;
  std::vector<FieldElement> cofactor;  // degree 0 when everything was found
};

/// Square root of d in the field of d, when one exists and can be found: over Q
/// and for rational d by integer root extraction; in a quadratic field
/// Q(s), s^2 = disc, by solving (u + v*s)^2 = d over Q; otherwise only the
/// candidates t * a^k with t rational are tried.
inline std::optional<FieldElement> square_root(const FieldElement& d) {
  if (d.is_zero()) return d;
  const NumberField& k = d.field();
  auto rational_sqrt = [](const Rational& v) -> std::optional<Rational> {
    if (sgn(v) < 0) return std::nullopt;
    auto n = exact_root(v.get_num(), 2);
    auto m = exact_root(v.get_den(), 2);
    if (!n || !m) return std::nullopt;
    return make_rational(*n, *m);
  };
  auto embed = [&](const Rational& v) { return k.is_rationals() ? FieldElement(v) : FieldElement(k, {v}); };
  if (d.is_rational())
    if (auto r = rational_sqrt(d.rational_value())) return embed(*r);
  if (k.is_rationals()) return std::nullopt;
  const FieldElement a = FieldElement::generator(k);
  if (k.degree() == 2) {
    // s = 2a + m1 satisfies s^2 = disc = m1^2 - 4 m0; write d = d0 + d1 s.
    const auto& m = k.modulus().coeffs();
    const FieldElement s = FieldElement(2) * a + embed(m[1]);
    const Rational disc = m[1] * m[1] - 4 * m[0];
    auto c = d.coordinates();
    c.resize(2, Rational(0));
    const Rational d1 = c[1] / 2, d0 = c[0] - d1 * m[1];
    if (sgn(d1) == 0) {
      if (auto v = rational_sqrt(d0 / disc)) return embed(*v) * s;
      return std::nullopt;
    }
    // u^2 + v^2 disc = d0 and 2uv = d1, so U = u^2 solves U^2 - d0 U + d1^2 disc / 4 = 0.
    auto root = rational_sqrt(d0 * d0 - d1 * d1 * disc);
    if (!root) return std::nullopt;
    for (const Rational& big : {Rational((d0 + *root) / 2), Rational((d0 - *root) / 2)})
      if (auto u = rational_sqrt(big); u && sgn(*u) != 0) {
        FieldElement cand = embed(*u) + embed(Rational(d1 / (2 * *u))) * s;
        if (cand * cand == d) return cand;
      }
    return std::nullopt;
  }
  FieldElement ak = a;
  for (int e = 1; e < 2 * k.degree(); ++e, ak = ak * a) {
    FieldElement t = d / (ak * ak);
    if (t.is_rational())
      if (auto r = rational_sqrt(t.rational_value())) return embed(*r) * ak;
  }
  return std::nullopt;
}

/// Divides coeffs (low degree first) by z - r as often as possible.
inline std::size_t deflate(std::vector<FieldElement>& coeffs, const FieldElement& r) {
  std::size_t times = 0;
  while (coeffs.size() > 1) {
    std::vector<FieldElement> quo(coeffs.size() - 1);
    FieldElement carry(0);
    for (std::size_t i = coeffs.size(); i-- > 1;) {
      carry = coeffs[i] + carry * r;
      quo[i - 1] = carry;
    }
    if (!(coeffs[0] + carry * r).is_zero()) break;
    coeffs = std::move(quo);
    ++times;
  }
  return times;
}

inline FoundRoots roots_in_field(std::vector<FieldElement> coeffs, const NumberField& field = {}) {
  while (!coeffs.empty() && coeffs.back().is_zero()) coeffs.pop_back();
  if (!field.is_rationals())
    for (auto& c : coeffs)
      if (c.field().is_rationals()) c = FieldElement(field, {c.rational_value()});
  FoundRoots out;
  if (coeffs.size() <= 1) {
    out.cofactor = coeffs;
    return out;
  }
  const FieldElement lead = coeffs.back();
  for (auto& c : coeffs) c = c / lead;
  auto take = [&](const FieldElement& r) {
    if (deflate(coeffs, r) > 0) out.roots.push_back(r);
  };
  auto quadratic = [&] {
    if (coeffs.size() != 3) return;
    const FieldElement b = coeffs[1], c = coeffs[0];
    if (auto sq = square_root(b * b - FieldElement(4) * c)) {
      const FieldElement two(2);
      take((-b + *sq) / two);
      take((-b - *sq) / two);
    }
  };
  if (coeffs.size() == 2) take(-coeffs[0]);
  if (std::all_of(coeffs.begin(), coeffs.end(), [](const auto& c) { return c.is_rational(); })) {
    std::vector<Rational> q;
    for (const auto& c : coeffs) q.push_back(c.rational_value());
    const NumberField k = field.is_rationals() ? coeffs.front().field() : field;
    for (const Rational& r : rational_roots(QPoly(q))) take(k.is_rationals() ? FieldElement(r) : FieldElement(k, {r}));
    // The user adjoined a root of an irreducible factor of this polynomial.
    if (!k.is_rationals() && coeffs.size() > 2) take(FieldElement::generator(k));
  }
  if (coeffs.size() == 2) take(-coeffs[0]);
  quadratic();
  std::sort(out.roots.begin(), out.roots.end(),
            [](const FieldElement& a, const FieldElement& b) { return canonical_less(a, b); });
  for (auto& c : coeffs) c = c * lead;
  out.cofactor = std::move(coeffs);
  return out;
}

struct PolygonOption {
  std::size_t segment;
  std::size_t root;
  long q = 1, m = 0, kappa = 0;  // substitution data; unused for the exact branch
  FieldElement c;
  bool exact_branch = false;
};

struct PuiseuxKernel {
  MultiPoly curve;
  PlaceCenter center;
  long max_terms = kDefaultMaxTerms;

  // u = T^e, v = prefix(T) + T^mu * w(T)
  long e = 1;
  std::vector<std::pair<long, FieldElement>> prefix;
  long mu = 0;
  MultiPoly h{2};  // H(T, w) after the singular phase
  bool w_exact_zero = false;
  std::vector<Dense> h_by_w, dh_by_w;
  std::vector<std::string> stage_log;
};

inline MultiPoly local_equation(const MultiPoly& f, const PlaceCenter& c) {
  if (f.nvars() != 2) throw InvalidInput("curve polynomial must be in x and y");
  const int dx = f.degree_in(0), dy = f.degree_in(1);
  const MultiPoly u = MultiPoly::variable(2, 0), v = MultiPoly::variable(2, 1);
  std::vector<MultiPoly> xp, yp;
  for (int i = 0; i <= dx; ++i)
    xp.push_back(c.x.at_infinity ? u.pow(static_cast<unsigned>(dx - i))
                                 : (u + MultiPoly::constant(2, c.x.value)).pow(static_cast<unsigned>(i)));
  for (int j = 0; j <= dy; ++j)
    yp.push_back(c.y.at_infinity ? v.pow(static_cast<unsigned>(dy - j))
                                 : (v + MultiPoly::constant(2, c.y.value)).pow(static_cast<unsigned>(j)));
  MultiPoly h(2);
  for (const auto& [m, coef] : f.terms()) h += coef * (xp[static_cast<std::size_t>(m[0])] * yp[static_cast<std::size_t>(m[1])]);
  return h;
}

inline std::string describe_option(const PolygonOption& o) {
  if (o.exact_branch) return "[" + std::to_string(o.segment) + " 0] v = prefix exactly";
  return "[" + std::to_string(o.segment) + " " + std::to_string(o.root) + "] slope " + std::to_string(o.m) + "/" +
         std::to_string(o.q) + ", c = " + o.c.to_string();
}

/// Runs the singular phase and prepares the regular phase.
inline std::shared_ptr<const PuiseuxKernel> build_kernel(const MultiPoly& f, const PlaceCenter& center,
                                                         const BranchChoice& branch, long max_terms) {
  auto k = std::make_shared<PuiseuxKernel>();
  k->curve = f;
  k->center = center;
  k->max_terms = max_terms;
  // Coefficients that happen to be rational do not record the field they live in.
  NumberField ambient;
  for (const auto* c : {&center.x, &center.y})
    if (!c->value.field().is_rationals()) ambient = c->value.field();
  for (const auto& [mono, c] : f.terms())
    if (!c.field().is_rationals()) ambient = c.field();
  MultiPoly h = local_equation(f, center);
  if (h.is_zero()) throw InvalidInput("curve polynomial is zero");
  if (!h.coefficient(Monomial(2)).is_zero())
    throw InvalidInput("the center " + center.to_string() + " does not lie on the curve");
  {
    Monomial content = h.monomial_content();
    content[1] = 0;  // a factor v is a genuine branch; a factor u is a vertical line
    if (!content.is_one()) h = *divide_exact(h, MultiPoly::term(content, FieldElement(1)));
  }

  const long max_stages = 4 * max_terms;
  for (long stage = 0;; ++stage) {
    if (stage > max_stages) throw PrecisionExhausted("singular expansion did not separate the branch");
    if (!h.coefficient(Monomial{0, 1}).is_zero()) break;  // regular

    // Support points and the lower Newton polygon from (0, j0) to (iB, jmin).
    int j0 = -1, jmin = -1;
    for (const auto& [m, c] : h.terms()) {
      if (m[0] == 0) j0 = j0 < 0 ? m[1] : std::min(j0, m[1]);
      jmin = jmin < 0 ? m[1] : std::min(jmin, m[1]);
    }
    if (j0 < 0) throw InvalidInput("local equation is divisible by the uniformizer");
    std::vector<int> min_i(static_cast<std::size_t>(j0) + 1, -1);
    for (const auto& [m, c] : h.terms())
      if (m[1] <= j0) {
        auto& slot = min_i[static_cast<std::size_t>(m[1])];
        slot = slot < 0 ? m[0] : std::min(slot, m[0]);
      }

    std::vector<PolygonOption> options;
    std::vector<std::string> unresolved;
    std::size_t segment = 0;
    std::vector<std::vector<std::size_t>> classes;  // indices into options
    long ci = 0, cj = j0;
    while (cj > jmin) {
      // Next hull vertex: smallest slope (ni - ci)/(cj - nj); ties go to the lowest j.
      long ni = -1, nj = -1;
      for (long j = cj - 1; j >= jmin; --j) {
        int i = min_i[static_cast<std::size_t>(j)];
        if (i < 0) continue;
        if (ni < 0 || (i - ci) * (cj - nj) <= (ni - ci) * (cj - j)) {
          ni = i;
          nj = j;
        }
      }
      long num = ni - ci, den = cj - nj;
      long g = std::gcd(num, den);
      long m = num / g, q = den / g;
      long kappa = q * ci + m * cj;
      std::vector<FieldElement> phi(static_cast<std::size_t>(cj - nj) + 1, FieldElement(0));
      for (const auto& [mono, c] : h.terms())
        if (q * mono[0] + m * mono[1] == kappa) phi[static_cast<std::size_t>(mono[1] - nj)] = c;
      FoundRoots found = roots_in_field(phi, ambient);
      if (found.cofactor.size() > 1)
        unresolved.push_back(poly_string(found.cofactor, "z") + " (segment " + std::to_string(segment) + ")");
      std::vector<std::size_t> seg_start;
      for (std::size_t r = 0; r < found.roots.size(); ++r) {
        PolygonOption o{segment, r, q, m, kappa, found.roots[r], false};
        // Same place iff the ratio of roots is a q-th root of unity.
        bool placed = false;
        for (std::size_t cl = classes.size(); cl-- > 0;) {
          const PolygonOption& rep = options[classes[cl].front()];
          if (rep.exact_branch || rep.segment != segment) break;
          if ((o.c / rep.c).pow(q) == FieldElement(1)) {
            classes[cl].push_back(options.size());
            placed = true;
            break;
          }
        }
        if (!placed) classes.push_back({options.size()});
        options.push_back(o);
      }
      ++segment;
      ci = ni;
      cj = nj;
    }
    if (jmin > 0) {
      PolygonOption o{segment, 0, 1, 0, 0, FieldElement(0), true};
      classes.push_back({options.size()});
      options.push_back(o);
    }

    const PolygonOption* chosen = nullptr;
    if (static_cast<std::size_t>(stage) < branch.size()) {
      const BranchDecision& d = branch[static_cast<std::size_t>(stage)];
      for (const auto& o : options)
        if (o.segment == d.segment && o.root == d.root) chosen = &o;
      if (!chosen) {
        std::string avail;
        for (const auto& o : options) avail += "\n  " + describe_option(o);
        throw InvalidInput("branch decision [" + std::to_string(d.segment) + " " + std::to_string(d.root) +
                           "] at stage " + std::to_string(stage) + " is not available; options:" + avail);
      }
    } else if (classes.size() == 1 && unresolved.empty()) {
      chosen = &options[classes.front().front()];
    } else if (options.empty()) {
      throw NeedsExtension("roots of " + unresolved.front() + " are not in the field; adjoin one and retry");
    } else {
      std::string avail;
      for (const auto& o : options) avail += "\n  " + describe_option(o);
      for (const auto& u : unresolved) avail += "\n  roots of " + u + " (not in the field)";
      throw AmbiguousBranch("stage " + std::to_string(stage) + " allows several places:" + avail);
    }

    k->stage_log.push_back(describe_option(*chosen));
    if (chosen->exact_branch) {
      k->w_exact_zero = true;
      k->h = h;
      return k;
    }

    // H'(S, w') = S^-kappa H(S^q, S^m (c + w')).
    const long q = chosen->q, m = chosen->m;
    MultiPoly s = MultiPoly::variable(2, 0), w = MultiPoly::variable(2, 1);
    std::vector<MultiPoly> subst = {s.pow(static_cast<unsigned>(q)),
                                    s.pow(static_cast<unsigned>(m)) * (MultiPoly::constant(2, chosen->c) + w)};
    MultiPoly hn = compose(h, subst);
    Monomial shift = Monomial::unit(2, 0, static_cast<int>(chosen->kappa));
    auto divided = divide_exact(hn, MultiPoly::term(shift, FieldElement(1)));
    if (!divided) throw InvalidInput("internal: polygon substitution is not divisible");
    h = std::move(*divided);

    for (auto& [exp, c] : k->prefix) exp *= q;
    k->prefix.emplace_back(k->mu * q + m, chosen->c);
    k->e *= q;
    k->mu = k->mu * q + m;
  }

  k->h = h;
  if (h.coefficient_in(1, 0).is_zero()) {
    k->w_exact_zero = true;
  } else {
    k->h_by_w = coefficients_in_w(h);
    k->dh_by_w = coefficients_in_w(h.derivative(1));
  }
  return k;
}

/// Extends w (correct mod T^w.size()) to at least n coefficients.
inline Dense newton_extend(const PuiseuxKernel& k, Dense w, std::size_t n) {
  if (w.empty()) w.push_back(FieldElement(0));
  while (w.size() < n) {
    std::size_t have = w.size();
    std::size_t target = std::min(2 * have, n);
    Dense r = evaluate_in_w(k.h_by_w, w, target);
    Dense d = evaluate_in_w(k.dh_by_w, w, target - have);
    Dense r_high(r.begin() + static_cast<long>(have), r.end());
    for (std::size_t i = 0; i < have; ++i)
      if (!r[i].is_zero()) throw InvalidInput("internal: Newton iterate lost its precision");
    Dense delta = dense_mul(r_high, dense_inverse(d, target - have), target - have);
    w.resize(target, FieldElement(0));
    for (std::size_t i = 0; i < delta.size(); ++i) w[have + i] -= delta[i];
  }
  return w;
}

}  // namespace detail

class PlaceParametrization {
 public:
  const PlaceCenter& center() const { return kernel_->center; }
  const MultiPoly& curve() const { return kernel_->curve; }
  long ramification_index() const { return kernel_->e; }
  const LaurentSeries& x_series() const { return x_; }
  const LaurentSeries& y_series() const { return y_; }
  /// y(T) is known modulo T^order().
  long order() const { return y_.precision(); }
  long max_terms() const { return kernel_->max_terms; }
  const std::vector<std::string>& stage_log() const { return kernel_->stage_log; }

  /// Same place with y known at least modulo T^new_order. Earlier coefficients
  /// are unchanged.
  PlaceParametrization refine(long new_order) const {
    if (new_order <= order()) return *this;
    PlaceParametrization p = *this;
    p.build(new_order);
    return p;
  }

 private:
  friend PlaceParametrization expand_place(const MultiPoly&, const PlaceCenter&, const BranchChoice&, long, long);

  PlaceParametrization(std::shared_ptr<const detail::PuiseuxKernel> k) : kernel_(std::move(k)) {}

  LaurentSeries v_series() const {
    const auto& k = *kernel_;
    std::vector<FieldElement> pc;
    long low = 0;
    if (!k.prefix.empty()) {
      low = k.prefix.front().first;
      pc.assign(static_cast<std::size_t>(k.prefix.back().first - low) + 1, FieldElement(0));
      for (const auto& [ex, c] : k.prefix) pc[static_cast<std::size_t>(ex - low)] = c;
    }
    LaurentSeries pre(low, std::move(pc));
    if (k.w_exact_zero) return pre;
    return pre + LaurentSeries(k.mu, w_, k.mu + static_cast<long>(w_.size()));
  }

  void build(long order) {
    const auto& k = *kernel_;
    const long e = k.e;
    x_ = k.center.x.at_infinity ? LaurentSeries::monomial(FieldElement(1), -e)
                                : LaurentSeries(0, {k.center.x.value}) + LaurentSeries::monomial(FieldElement(1), e);
    for (;;) {
      LaurentSeries v = v_series();
      long deficit;
      if (k.center.y.at_infinity && v.is_zero_to_truncation()) {
        deficit = static_cast<long>(w_.size()) + 1;  // order of v not visible yet
      } else {
        y_ = k.center.y.at_infinity ? v.inverse(order) : LaurentSeries(0, {k.center.y.value}) + v;
        if (y_.precision() >= order || k.w_exact_zero) return;
        deficit = order - y_.precision();
      }
      if (static_cast<long>(w_.size()) >= k.max_terms)
        throw PrecisionExhausted("expansion needs more than " + std::to_string(k.max_terms) + " terms");
      std::size_t want = std::min<std::size_t>(static_cast<std::size_t>(k.max_terms),
                                               w_.size() + static_cast<std::size_t>(deficit));
      w_ = detail::newton_extend(k, std::move(w_), want);
    }
  }

  std::shared_ptr<const detail::PuiseuxKernel> kernel_;
  detail::Dense w_;
  LaurentSeries x_, y_;
};

/// Expands F at the place selected by `center` and `branch` with y(T) known at
/// least modulo T^order.
inline PlaceParametrization expand_place(const MultiPoly& f, const PlaceCenter& center, const BranchChoice& branch,
                                         long order, long max_terms = kDefaultMaxTerms) {
  PlaceParametrization p(detail::build_kernel(f, center, branch, max_terms));
  p.build(order);
  return p;
}

}  // namespace twc
