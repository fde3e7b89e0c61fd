#include <catch2/catch_amalgamated.hpp>

#include "desk.hpp"

using namespace twc;
using desk::poly;
using desk::q;

namespace {

// F(x(T), y(T)) vanishes to the truncation of the parametrization.
void check_residual(const MultiPoly& f, const PlaceParametrization& par) {
  LaurentSeries r = evaluate_polynomial(f, par.x_series(), par.y_series());
  CHECK(r.is_zero_to_truncation());
  // At affine centers the residual is known at least as far as y(T).
  if (par.x_series().order() >= 0) CHECK(r.precision() >= par.y_series().precision());
}

NumberField gaussian() { return NumberField::from_minimal_polynomial(QPoly({q(1), q(0), q(1)})); }

}  // namespace

TEST_CASE("expansion of the genus two curve at the origin", "[puiseux]") {
  PlaceParametrization par = expand_place(desk::genus2_curve(), desk::origin(), {}, 6);
  CHECK(par.ramification_index() == 2);
  CHECK(par.x_series() == LaurentSeries::monomial(FieldElement(1), 2));
  const LaurentSeries& y = par.y_series();
  CHECK(y.precision() == 6);
  CHECK(y.coefficient(0).is_zero());
  CHECK(y.coefficient(1) == FieldElement(1));
  CHECK(y.coefficient(2).is_zero());
  CHECK(y.coefficient(3) == FieldElement(q(1, 2)));
  CHECK(y.coefficient(4).is_zero());
  CHECK(y.coefficient(5) == FieldElement(q(11, 8)));
  CHECK(y.to_string() == "T + 1/2*T^3 + 11/8*T^5 + O(T^6)");
  check_residual(desk::genus2_curve(), par);
}

TEST_CASE("refinement keeps earlier coefficients", "[puiseux]") {
  PlaceParametrization p6 = expand_place(desk::genus2_curve(), desk::origin(), {}, 6);
  PlaceParametrization p10 = p6.refine(10);
  CHECK(p10.order() == 10);
  CHECK(p10.y_series().truncated(6) == p6.y_series());
  check_residual(desk::genus2_curve(), p10);
  PlaceParametrization same = p6.refine(6);
  CHECK(same.y_series() == p6.y_series());
  CHECK(same.x_series() == p6.x_series());
  PlaceParametrization p40 = p10.refine(40);
  CHECK(p40.y_series().truncated(10) == p10.y_series());
  check_residual(desk::genus2_curve(), p40);
}

TEST_CASE("expansion is deterministic", "[puiseux]") {
  auto a = expand_place(desk::genus2_curve(), desk::origin(), {}, 25);
  auto b = expand_place(desk::genus2_curve(), desk::origin(), {}, 25);
  CHECK(a.y_series() == b.y_series());
  CHECK(a.y_series().to_string() == b.y_series().to_string());
}

TEST_CASE("smooth and cuspidal examples", "[puiseux]") {
  auto graph = expand_place(poly("y - x^2"), desk::origin(), {}, 8);
  CHECK(graph.ramification_index() == 1);
  CHECK(graph.y_series().truncated(8) == LaurentSeries::monomial(FieldElement(1), 2, 8));
  check_residual(poly("y - x^2"), graph);

  auto cusp = expand_place(poly("y^2 - x^3"), desk::origin(), {}, 10);
  CHECK(cusp.ramification_index() == 2);
  CHECK(cusp.x_series() == LaurentSeries::monomial(FieldElement(1), 2));
  // y = +-T^3; the branch choice fixes the sign of T.
  CHECK(cusp.y_series().order() == 3);
  CHECK((cusp.y_series().leading_coefficient() == FieldElement(1) ||
         cusp.y_series().leading_coefficient() == FieldElement(-1)));
  check_residual(poly("y^2 - x^3"), cusp);

  // Center away from the origin: the ramification index is the order of x - x0.
  auto shifted = expand_place(poly("y^2 - x"), PlaceCenter::affine(FieldElement(1), FieldElement(1)), {}, 8);
  CHECK(shifted.ramification_index() == 1);
  CHECK((shifted.x_series() - LaurentSeries::constant(FieldElement(1))).order() == 1);
  check_residual(poly("y^2 - x"), shifted);
}

TEST_CASE("a node has two places and needs a branch choice", "[puiseux]") {
  MultiPoly node = poly("y^2 - x^2 - x^3");
  CHECK_THROWS_AS(expand_place(node, desk::origin(), {}, 8), AmbiguousBranch);
  auto up = expand_place(node, desk::origin(), {{0, 0}}, 8);
  auto down = expand_place(node, desk::origin(), {{0, 1}}, 8);
  check_residual(node, up);
  check_residual(node, down);
  CHECK(up.y_series().coefficient(1) == -down.y_series().coefficient(1));
  CHECK(up.y_series().coefficient(1) * up.y_series().coefficient(1) == FieldElement(1));
  CHECK_THROWS_AS(expand_place(node, desk::origin(), {{0, 2}}, 8), InvalidInput);
}

TEST_CASE("tangent directions outside the field need an extension", "[puiseux]") {
  MultiPoly f = poly("y^2 + x^2 + x^3");
  CHECK_THROWS_AS(expand_place(f, desk::origin(), {}, 8), NeedsExtension);
  NumberField k = gaussian();
  MultiPoly fk = parse_polynomial("y^2 + x^2 + x^3", {"x", "y"}, k);
  PlaceCenter o = PlaceCenter::affine(FieldElement(k, {q(0)}), FieldElement(k, {q(0)}));
  CHECK_THROWS_AS(expand_place(fk, o, {}, 8), AmbiguousBranch);
  auto par = expand_place(fk, o, {{0, 0}}, 8);
  check_residual(fk, par);
  CHECK(par.y_series().coefficient(1) * par.y_series().coefficient(1) == FieldElement(k, {q(-1)}));
}

TEST_CASE("centers not on the curve are rejected", "[puiseux]") {
  CHECK_THROWS_AS(expand_place(desk::genus2_curve(), PlaceCenter::affine(FieldElement(1), FieldElement(0)), {}, 6),
                  InvalidInput);
}

TEST_CASE("the place at infinity of an elliptic curve", "[puiseux]") {
  MultiPoly e = desk::elliptic_curve();
  auto par = expand_place(e, PlaceCenter::infinity(), {}, 10);
  CHECK(par.x_series().order() == -2);
  CHECK(par.y_series().order() == -3);
  // y^2 / x^3 tends to 1 along the place.
  FieldElement lx = par.x_series().leading_coefficient(), ly = par.y_series().leading_coefficient();
  CHECK(ly * ly == lx * lx * lx);
  check_residual(e, par);
  auto finer = par.refine(30);
  CHECK(finer.y_series().truncated(par.y_series().precision()) == par.y_series());
  check_residual(e, finer);
}

TEST_CASE("a point at infinity with finite y needs the field of its tangent", "[puiseux]") {
  // x*y^2 + x + 1 = 0 meets the line at infinity at (infinity, +-i).
  MultiPoly f = poly("x*y^2 + x + 1");
  PlaceCenter c{CenterCoordinate::infinity(), CenterCoordinate::finite(FieldElement(0))};
  CHECK_THROWS_AS(expand_place(f, c, {}, 8), InvalidInput);

  NumberField k = gaussian();
  MultiPoly fk = parse_polynomial("x*y^2 + x + 1", {"x", "y"}, k);
  PlaceCenter ci{CenterCoordinate::infinity(), CenterCoordinate::finite(FieldElement::generator(k))};
  auto par = expand_place(fk, ci, {}, 8);
  CHECK(par.x_series().order() < 0);
  check_residual(fk, par);
}

TEST_CASE("segment roots are found in quadratic extensions", "[puiseux]") {
  struct Case {
    std::vector<Rational> modulus;
    std::string curve;
    Rational square;  // c^2 for the tangent slopes +-c
  };
  // sqrt(2) = a/2 in Q(sqrt 8); sqrt(-3) = 2a + 1 when a^2 + a + 1 = 0.
  const std::vector<Case> cases{{{q(-8), q(0), q(1)}, "y^2 - 2*x^2 - x^3", q(2)},
                                {{q(1), q(1), q(1)}, "y^2 + 3*x^2 + x^3", q(-3)},
                                {{q(-5), q(0), q(1)}, "y^2 - 5/4*x^2 + x^4", q(5, 4)}};
  for (const auto& c : cases) {
    CHECK_THROWS_AS(expand_place(poly(c.curve), desk::origin(), {}, 6), NeedsExtension);
    NumberField k = NumberField::from_minimal_polynomial(QPoly(c.modulus));
    MultiPoly f = parse_polynomial(c.curve, {"x", "y"}, k);
    PlaceCenter o = PlaceCenter::affine(FieldElement(k, {q(0)}), FieldElement(k, {q(0)}));
    for (std::size_t root = 0; root < 2; ++root) {
      auto par = expand_place(f, o, {{0, root}}, 10);
      const FieldElement s = par.y_series().coefficient(1);
      CHECK(s * s == FieldElement(k, {c.square}));
      check_residual(f, par);
    }
  }
}

TEST_CASE("square roots in number fields", "[puiseux]") {
  NumberField k = NumberField::from_minimal_polynomial(QPoly({q(-2), q(0), q(0), q(1)}));
  FieldElement a = FieldElement::generator(k);
  for (const FieldElement& d : {a * a, FieldElement(k, {q(9, 4)}), a * a * a * a * FieldElement(k, {q(9)})}) {
    auto r = detail::square_root(d);
    REQUIRE(r);
    CHECK(*r * *r == d);
  }
  CHECK(!detail::square_root(FieldElement(2)));
  NumberField g = NumberField::from_minimal_polynomial(QPoly({q(1), q(0), q(1)}));
  FieldElement i = FieldElement::generator(g);
  // (1 + i)^2 = 2i and (2 - 3i)^2 = -5 - 12i.
  for (const FieldElement& d : {FieldElement(2) * i, FieldElement(g, {q(-5), q(-12)})}) {
    auto r = detail::square_root(d);
    REQUIRE(r);
    CHECK(*r * *r == d);
  }
  CHECK(!detail::square_root(i));
}
