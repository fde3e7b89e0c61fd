#include <catch2/catch_amalgamated.hpp>

#include "desk.hpp"

using namespace twc;
using desk::poly;
using desk::q;
using desk::scaling;

namespace {

std::vector<std::string> names(const std::vector<ScalingMap>& v) {
  std::vector<std::string> out;
  for (const auto& s : v) out.push_back(s.to_string());
  return out;
}

// F(lambda x) is a constant multiple of F, checked by direct substitution.
bool preserves(const MultiPoly& f, const std::vector<long>& lambda) {
  std::optional<Rational> ratio;
  for (const auto& [m, c] : f.terms()) {
    Rational v = 1;
    for (std::size_t i = 0; i < m.nvars(); ++i)
      for (int e = 0; e < m[i]; ++e) v *= lambda[i];
    if (!ratio) ratio = v;
    if (v != *ratio) return false;
  }
  return true;
}

std::vector<ScalingMap> sign_vectors_preserving(const TWCurve& tw) {
  std::vector<ScalingMap> out;
  for (unsigned bits = 0; bits < (1u << tw.r); ++bits) {
    std::vector<long> l;
    for (std::size_t i = 0; i < tw.r; ++i) l.push_back((bits >> i) & 1u ? -1 : 1);
    bool ok = true;
    for (const auto& eq : tw.equations) ok = ok && preserves(eq.polynomial, l);
    if (ok) out.push_back(scaling(l));
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return canonical_less(a, b); });
  return out;
}

NumberField field_from(std::vector<Rational> coeffs) { return NumberField::from_minimal_polynomial(QPoly(coeffs)); }

}  // namespace

TEST_CASE("the identity is an automorphism", "[isofield]") {
  TWCurve tw = desk::genus2_tw();
  ScalingVerdict v = verify_scaling(tw, tw, ScalingMap::identity(3));
  CHECK(v.fast_filter);
  CHECK(v.local_n.consistent);
  CHECK(v.local_2n.consistent);
  REQUIRE(v.global);
  CHECK(v.global->maps_curve);
  CHECK(v.global->pulls_back_generators);
  CHECK(v.accepted);
  CHECK(v.local_global_agree());
}

TEST_CASE("rescaled generators give the rescaling isomorphism", "[isofield]") {
  TWCurve a = desk::genus2_tw();
  const ScalingMap mu = scaling({2, 3, 5});
  TWCurve b = rescale(a, mu);
  CHECK(verify_tw(b).passed());
  ScalingVerdict v = verify_scaling(a, b, mu);
  CHECK(v.accepted);
  CHECK(v.local_global_agree());

  SolutionSet s = solve_scalings(a, b);
  CHECK(s.status == SolutionStatus::Finite);
  CHECK(std::find(s.verified.begin(), s.verified.end(), mu) != s.verified.end());
  for (const auto& c : s.candidates) CHECK(s.system.satisfied_by(c));
  // Every isomorphism differs from mu by an automorphism of the source.
  AutomorphismGroup g = automorphism_group(a);
  CHECK(s.verified.size() == g.elements.size());
  for (const auto& t : s.verified) {
    ScalingMap diff = mu.inverse() * t;
    CHECK(std::find(g.elements.begin(), g.elements.end(), diff) != g.elements.end());
  }
}

TEST_CASE("a scaling that breaks an equation fails the fast filter", "[isofield]") {
  TWCurve tw = desk::genus2_tw();
  ScalingVerdict v = verify_scaling(tw, tw, scaling({2, 1, 1}));
  CHECK(!v.fast_filter);
  CHECK(!v.accepted);
  CHECK(!v.global);
  CHECK_THROWS_AS(verify_scaling(tw, tw, scaling({1, 1})), InvalidInput);
  CHECK_THROWS_AS(verify_scaling(tw, tw, scaling({1, 0, 1})), InvalidInput);
}

TEST_CASE("candidate scalings match a sign-vector brute force", "[isofield]") {
  for (const TWCurve& tw : {desk::genus2_tw(), desk::elliptic_tw(), desk::elliptic_tw(poly("y^2 - x^3 - 1"))}) {
    SolutionSet s = solve_scalings(tw, tw);
    CHECK(names(s.candidates) == names(sign_vectors_preserving(tw)));
  }
  SolutionSet g2 = solve_scalings(desk::genus2_tw(), desk::genus2_tw());
  CHECK(names(g2.candidates) == std::vector<std::string>{"(1, 1, 1)", "(-1, 1, -1)"});
}

TEST_CASE("automorphisms of the genus two example", "[isofield]") {
  AutomorphismGroup g = automorphism_group(desk::genus2_tw());
  CHECK(g.solutions.status == SolutionStatus::Finite);
  CHECK(names(g.elements) == std::vector<std::string>{"(1, 1, 1)", "(-1, 1, -1)"});
  CHECK(g.is_group());
  for (const auto& v : g.solutions.verdicts) CHECK(v.local_global_agree());
}

TEST_CASE("automorphisms of elliptic curves", "[isofield]") {
  AutomorphismGroup g = automorphism_group(desk::elliptic_tw(poly("y^2 - x^3 - 1")));
  CHECK(names(g.elements) == std::vector<std::string>{"(1, 1)", "(1, -1)"});
  CHECK(g.is_group());

  AutomorphismGroup generic = automorphism_group(desk::elliptic_tw());
  CHECK(names(generic.elements) == std::vector<std::string>{"(1, 1)", "(1, -1)"});
}

TEST_CASE("extra automorphisms appear over a larger field", "[isofield]") {
  // y^2 = x^3 + x has (x, y) -> (-x, i y).
  TWCurve tw = desk::elliptic_tw(poly("y^2 - x^3 - x"));
  // Over Q the missing square root of -1 is decided, not left open.
  AutomorphismGroup over_q = automorphism_group(tw);
  CHECK(over_q.solutions.status == SolutionStatus::Finite);
  CHECK(over_q.solutions.pending.empty());
  CHECK(names(over_q.elements) == std::vector<std::string>{"(1, 1)", "(1, -1)"});

  // Over Q(sqrt 2) the root search has no proof that i is absent.
  AutomorphismGroup over_r2 = automorphism_group(tw, VerifyOptions{0, {}, field_from({q(-2), q(0), q(1)})});
  CHECK(over_r2.solutions.status == SolutionStatus::Unresolved);
  CHECK(!over_r2.solutions.pending.empty());
  CHECK(over_r2.elements.size() == 2);

  NumberField k = field_from({q(1), q(0), q(1)});
  AutomorphismGroup over_qi = automorphism_group(tw, VerifyOptions{0, {}, k});
  CHECK(over_qi.solutions.status == SolutionStatus::Finite);
  CHECK(over_qi.elements.size() == 4);
  CHECK(over_qi.is_group());
  const FieldElement i = FieldElement::generator(k);
  CHECK(std::find(over_qi.elements.begin(), over_qi.elements.end(), ScalingMap{{FieldElement(k, {q(-1)}), i}}) !=
        over_qi.elements.end());
  for (const auto& v : over_qi.solutions.verdicts) CHECK(v.local_global_agree());
}

TEST_CASE("isomorphism between two Weierstrass models", "[isofield]") {
  // x -> 4x, y -> 8y maps y^2 = x^3 + x + 1 onto y^2 = x^3 + 16x + 64.
  TWCurve a = desk::elliptic_tw();
  TWCurve b = desk::elliptic_tw(poly("y^2 - x^3 - 16*x - 64"));
  SolutionSet s = solve_scalings(a, b);
  CHECK(s.status == SolutionStatus::Finite);
  CHECK(names(s.verified) == std::vector<std::string>{"(4, 8)", "(4, -8)"});
  for (const auto& v : s.verdicts) CHECK(v.local_global_agree());

  SolutionSet back = solve_scalings(b, a);
  CHECK(names(back.verified) == std::vector<std::string>{"(1/4, 1/8)", "(1/4, -1/8)"});
}

TEST_CASE("non-isomorphic curves with the same semigroup", "[isofield]") {
  TWCurve a = desk::elliptic_tw();
  TWCurve b = desk::elliptic_tw(poly("y^2 - x^3 - x - 2"));
  SolutionSet s = solve_scalings(a, b);
  CHECK(s.status == SolutionStatus::Empty);
  CHECK(s.verified.empty());
}

TEST_CASE("certificates of different shape are rejected", "[isofield]") {
  CHECK_THROWS_AS(solve_scalings(desk::genus2_tw(), desk::elliptic_tw()), MismatchedCertificates);
  CHECK_THROWS_AS(scaling_system(desk::elliptic_tw(), desk::genus2_tw()), MismatchedCertificates);
}

TEST_CASE("scaling maps form a group under componentwise product", "[isofield]") {
  ScalingMap a = scaling({2, -3, 5}), b = scaling({-1, 7, 1});
  CHECK(a * a.inverse() == ScalingMap::identity(3));
  CHECK(a * b == b * a);
  CHECK((a * b).to_string() == "(-2, -21, 5)");
  CHECK(a.inverse().to_string() == "(1/2, -1/3, 1/5)");
  CHECK(ScalingMap::identity(3).is_identity());
  CHECK_THROWS_AS(a * scaling({1, 1}), InvalidInput);
}

TEST_CASE("local reparametrization finds the reparametrization of T", "[isofield]") {
  TWCurve a = desk::genus2_tw();
  TWCurve b = rescale(a, scaling({2, 3, 5}));
  LocalCheck good = local_reparametrization(a.generators, b.generators, scaling({2, 3, 5}), 20);
  CHECK(good.consistent);
  CHECK(!good.u.empty());
  LocalCheck bad = local_reparametrization(a.generators, b.generators, scaling({2, 3, 7}), 20);
  CHECK(!bad.consistent);

  auto s = detail::bezout({3, 4, 5});
  CHECK(3 * s[0] + 4 * s[1] + 5 * s[2] == 1);
}
