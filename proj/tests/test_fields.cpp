#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <functional>
#include <random>

#include "desk.hpp"

using namespace twc;
using desk::q;

namespace {

NumberField cube_root_two() { return NumberField::from_minimal_polynomial(QPoly({q(-2), q(0), q(0), q(1)})); }
NumberField gaussian() { return NumberField::from_minimal_polynomial(QPoly({q(1), q(0), q(1)})); }

Rational random_rational(std::mt19937& rng) {
  std::uniform_int_distribution<long> num(-20, 20), den(1, 9);
  Rational r(num(rng), den(rng));
  r.canonicalize();
  return r;
}

FieldElement random_element(std::mt19937& rng, const NumberField& k) {
  if (k.is_rationals()) return FieldElement(random_rational(rng));
  std::vector<Rational> c;
  for (int i = 0; i < k.degree(); ++i) c.push_back(random_rational(rng));
  return FieldElement(k, c);
}

// Cofactor expansion; independent of the library's elimination code.
Integer cofactor_det(const std::vector<std::vector<Integer>>& m) {
  const std::size_t n = m.size();
  if (n == 0) return 1;
  if (n == 1) return m[0][0];
  Integer total = 0;
  for (std::size_t c = 0; c < n; ++c) {
    if (m[0][c] == 0) continue;
    std::vector<std::vector<Integer>> minor;
    for (std::size_t r = 1; r < n; ++r) {
      std::vector<Integer> row;
      for (std::size_t k = 0; k < n; ++k)
        if (k != c) row.push_back(m[r][k]);
      minor.push_back(row);
    }
    Integer term = m[0][c] * cofactor_det(minor);
    total += (c % 2 == 0) ? term : Integer(-term);
  }
  return total;
}

Rational cofactor_det_q(const std::vector<std::vector<Rational>>& m) {
  const std::size_t n = m.size();
  if (n == 1) return m[0][0];
  Rational total = 0;
  for (std::size_t c = 0; c < n; ++c) {
    std::vector<std::vector<Rational>> minor;
    for (std::size_t r = 1; r < n; ++r) {
      std::vector<Rational> row;
      for (std::size_t k = 0; k < n; ++k)
        if (k != c) row.push_back(m[r][k]);
      minor.push_back(row);
    }
    Rational term = m[0][c] * cofactor_det_q(minor);
    total += (c % 2 == 0) ? term : Rational(-term);
  }
  return total;
}

// gcd of all k x k minors.
Integer determinantal_divisor(const IntegerMatrix& m, std::size_t k) {
  Integer g = 0;
  std::vector<std::size_t> rows(k), cols(k);
  std::function<void(std::size_t, std::size_t)> pick_cols;
  std::function<void(std::size_t, std::size_t)> pick_rows = [&](std::size_t i, std::size_t start) {
    if (i == k) {
      pick_cols(0, 0);
      return;
    }
    for (std::size_t r = start; r < m.rows(); ++r) {
      rows[i] = r;
      pick_rows(i + 1, r + 1);
    }
  };
  pick_cols = [&](std::size_t i, std::size_t start) {
    if (i == k) {
      std::vector<std::vector<Integer>> sub(k, std::vector<Integer>(k));
      for (std::size_t a = 0; a < k; ++a)
        for (std::size_t b = 0; b < k; ++b) sub[a][b] = m(rows[a], cols[b]);
      Integer d = cofactor_det(sub);
      mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), d.get_mpz_t());
      return;
    }
    for (std::size_t c = start; c < m.cols(); ++c) {
      cols[i] = c;
      pick_cols(i + 1, c + 1);
    }
  };
  pick_rows(0, 0);
  return g;
}

void check_smith(const IntegerMatrix& m) {
  SmithForm s = smith_normal_form(m);
  REQUIRE(s.U * m * s.V == s.D);
  REQUIRE(s.D.is_diagonal());
  REQUIRE(abs(determinant(s.U)) == 1);
  REQUIRE(abs(determinant(s.V)) == 1);
  const std::size_t n = std::min(m.rows(), m.cols());
  for (std::size_t i = 0; i < n; ++i) {
    REQUIRE(s.D(i, i) >= 0);
    if (i + 1 < n && s.D(i, i) != 0) REQUIRE(s.D(i + 1, i + 1) % s.D(i, i) == 0);
    if (i + 1 < n && s.D(i, i) == 0) REQUIRE(s.D(i + 1, i + 1) == 0);
  }
  // d_1 * ... * d_k equals the k-th determinantal divisor.
  Integer prod = 1;
  for (std::size_t k = 1; k <= n; ++k) {
    prod *= s.D(k - 1, k - 1);
    REQUIRE(prod == determinantal_divisor(m, k));
  }
}

}  // namespace

TEST_CASE("rationals are stored normalized", "[fields]") {
  Rational a(6, -4);
  a.canonicalize();
  CHECK(a.get_num() == -3);
  CHECK(a.get_den() == 2);
  CHECK(parse_rational("-6/4") == q(-3, 2));
  CHECK(FieldElement(q(2, 4)).to_string() == "1/2");
}

TEST_CASE("field axioms over Q and Q(cube root of 2)", "[fields]") {
  std::mt19937 rng(20240611);
  for (const NumberField& k : {NumberField(), cube_root_two()}) {
    for (int trial = 0; trial < 60; ++trial) {
      FieldElement a = random_element(rng, k), b = random_element(rng, k), c = random_element(rng, k);
      CHECK((a * b) * c == a * (b * c));
      CHECK((a + b) + c == a + (b + c));
      CHECK(a * (b + c) == a * b + a * c);
      CHECK(a * b == b * a);
      CHECK(a - a == FieldElement(0));
      if (!a.is_zero()) CHECK(a * a.inverse() == FieldElement(1));
    }
  }
}

TEST_CASE("the generator of Q(cube root of 2) cubes to 2", "[fields]") {
  FieldElement a = FieldElement::generator(cube_root_two());
  CHECK(a.pow(3) == FieldElement(2));
  CHECK(a.pow(-3) == FieldElement(q(1, 2)));
  CHECK(!a.is_rational());
  CHECK((a * a * a).is_rational());
  CHECK((a + FieldElement(1)).inverse() == (a * a - a + FieldElement(1)) / FieldElement(3));
}

TEST_CASE("inverting a zero divisor in a reducible ring is detected", "[fields]") {
  NumberField ring = NumberField::unchecked(QPoly({q(-1), q(0), q(1)}));
  FieldElement a = FieldElement::generator(ring);
  CHECK_THROWS_AS((a - FieldElement(1)).inverse(), ZeroDivisorDetected);
  CHECK((a + FieldElement(2)) * (a + FieldElement(2)).inverse() == FieldElement(1));
}

TEST_CASE("minimal polynomial checks at construction", "[fields]") {
  CHECK_THROWS_AS(NumberField::from_minimal_polynomial(QPoly({q(-1), q(0), q(1)})), InvalidInput);
  CHECK_THROWS_AS(NumberField::from_minimal_polynomial(QPoly({q(1), q(2), q(1)})), InvalidInput);
  CHECK_THROWS_AS(NumberField::from_minimal_polynomial(QPoly({q(5)})), InvalidInput);
  NumberField k = NumberField::from_minimal_polynomial(QPoly({q(-3), q(2)}));
  CHECK(k.is_rationals());
  CHECK(k.rational_generator() == q(3, 2));
  NumberField g = NumberField::from_minimal_polynomial(QPoly({q(2), q(0), q(4)}));
  CHECK(g.degree() == 2);
  CHECK(g.modulus() == QPoly({q(1, 2), q(0), q(1)}));
}

TEST_CASE("nth roots over Q", "[fields]") {
  auto roots = [](long c, unsigned d) {
    RootSet s = nth_root_in_field(FieldElement(c), d);
    CHECK(s.status == RootStatus::ResolvedFully);
    std::vector<std::string> out;
    for (const auto& r : s.roots) {
      CHECK(r.pow(d) == FieldElement(c));
      out.push_back(r.to_string());
    }
    std::sort(out.begin(), out.end());
    return out;
  };
  CHECK(roots(16, 4) == std::vector<std::string>{"-2", "2"});
  CHECK(roots(2, 2).empty());
  CHECK(roots(1, 6) == std::vector<std::string>{"-1", "1"});
  CHECK(roots(-27, 3) == std::vector<std::string>{"-3"});
  CHECK(roots(-4, 2).empty());
  RootSet frac = nth_root_in_field(FieldElement(q(8, 27)), 3);
  CHECK(frac.roots == std::vector<FieldElement>{FieldElement(q(2, 3))});
  CHECK_THROWS_AS(nth_root_in_field(FieldElement(0), 2), InvalidInput);
}

TEST_CASE("nth roots over Q(i) use proposals and report what is left open", "[fields]") {
  NumberField k = gaussian();
  FieldElement i = FieldElement::generator(k);
  FieldElement minus_one(k, {q(-1)});
  RootSet bare = nth_root_in_field(minus_one, 2);
  CHECK(bare.status == RootStatus::Unresolved);
  CHECK(bare.roots.empty());
  CHECK(bare.pending_equation() == "x^2 = -1");

  std::vector<FieldElement> proposals{i, -i, FieldElement(k, {q(1), q(1)})};
  RootSet found = nth_root_in_field(minus_one, 2, proposals);
  CHECK(found.status == RootStatus::ResolvedFully);
  REQUIRE(found.roots.size() == 2);
  for (const auto& r : found.roots) CHECK(r * r == minus_one);

  RootSet four = nth_root_in_field(FieldElement(k, {q(1)}), 4, proposals);
  CHECK(four.status == RootStatus::ResolvedFully);
  CHECK(four.roots.size() == 4);
}

TEST_CASE("solve_linear small cases", "[fields]") {
  Matrix<FieldElement> one(1, 1, {FieldElement(1)});
  auto s1 = solve_linear(one, {FieldElement(2)});
  REQUIRE(s1.consistent());
  CHECK(*s1.particular == std::vector<FieldElement>{FieldElement(2)});
  CHECK(s1.kernel.empty());

  Matrix<FieldElement> rank1(2, 2, {FieldElement(1), FieldElement(1), FieldElement(2), FieldElement(2)});
  auto s2 = solve_linear(rank1, {FieldElement(3), FieldElement(6)});
  REQUIRE(s2.consistent());
  CHECK(*s2.particular == std::vector<FieldElement>{FieldElement(3), FieldElement(0)});
  REQUIRE(s2.kernel.size() == 1);
  CHECK(s2.kernel[0] == std::vector<FieldElement>{FieldElement(-1), FieldElement(1)});

  auto s3 = solve_linear(rank1, {FieldElement(3), FieldElement(7)});
  CHECK(!s3.consistent());
}

TEST_CASE("solve_linear agrees with a Cramer oracle on random 5x5 systems", "[fields]") {
  std::mt19937 rng(77);
  int solved = 0;
  for (int trial = 0; trial < 25; ++trial) {
    std::vector<std::vector<Rational>> a(5, std::vector<Rational>(5));
    std::vector<Rational> b(5);
    Matrix<FieldElement> m(5, 5);
    std::vector<FieldElement> rhs;
    for (std::size_t r = 0; r < 5; ++r) {
      for (std::size_t c = 0; c < 5; ++c) {
        a[r][c] = random_rational(rng);
        m(r, c) = FieldElement(a[r][c]);
      }
      b[r] = random_rational(rng);
      rhs.emplace_back(b[r]);
    }
    Rational det = cofactor_det_q(a);
    auto sol = solve_linear(m, rhs);
    if (det == 0) continue;
    ++solved;
    REQUIRE(sol.consistent());
    CHECK(sol.kernel.empty());
    for (std::size_t c = 0; c < 5; ++c) {
      auto ac = a;
      for (std::size_t r = 0; r < 5; ++r) ac[r][c] = b[r];
      CHECK((*sol.particular)[c] == FieldElement(Rational(cofactor_det_q(ac) / det)));
    }
  }
  CHECK(solved > 20);
}

TEST_CASE("solve_linear solution families reproduce the right hand side", "[fields]") {
  std::mt19937 rng(5);
  NumberField k = cube_root_two();
  for (int trial = 0; trial < 10; ++trial) {
    // Rank-deficient: the last two rows are combinations of the first two.
    Matrix<FieldElement> m(4, 5);
    for (std::size_t r = 0; r < 2; ++r)
      for (std::size_t c = 0; c < 5; ++c) m(r, c) = random_element(rng, k);
    FieldElement s = random_element(rng, k), t = random_element(rng, k);
    for (std::size_t c = 0; c < 5; ++c) {
      m(2, c) = s * m(0, c) + t * m(1, c);
      m(3, c) = m(0, c) - m(1, c);
    }
    std::vector<FieldElement> x0;
    for (int i = 0; i < 5; ++i) x0.push_back(random_element(rng, k));
    std::vector<FieldElement> b = multiply(m, x0);
    auto sol = solve_linear(m, b);
    REQUIRE(sol.consistent());
    CHECK(sol.kernel.size() == 3);
    std::vector<FieldElement> x = *sol.particular;
    for (const auto& v : sol.kernel) {
      FieldElement w = random_element(rng, k);
      for (std::size_t i = 0; i < 5; ++i) x[i] += w * v[i];
    }
    CHECK(multiply(m, x) == b);
    for (const auto& v : sol.kernel) CHECK(multiply(m, v) == std::vector<FieldElement>(4, FieldElement(0)));
  }
}

TEST_CASE("Smith normal form examples", "[fields]") {
  SmithForm id = smith_normal_form(IntegerMatrix::identity(3));
  CHECK(id.D == IntegerMatrix::identity(3));

  SmithForm s = smith_normal_form(IntegerMatrix(2, 2, {2, 4, 6, 8}));
  CHECK(s.D == IntegerMatrix(2, 2, {2, 0, 0, 4}));

  SmithForm z = smith_normal_form(IntegerMatrix(2, 3));
  CHECK(z.D == IntegerMatrix(2, 3));

  check_smith(IntegerMatrix(2, 2, {2, 4, 6, 8}));
  check_smith(IntegerMatrix(3, 2, {2, 0, 0, 2, 4, 0}));
}

TEST_CASE("Smith normal form against determinantal divisors", "[fields]") {
  std::mt19937 rng(99);
  std::uniform_int_distribution<long> entry(-9, 9);
  std::uniform_int_distribution<std::size_t> dim(1, 4);
  for (int trial = 0; trial < 80; ++trial) {
    const std::size_t r = dim(rng), c = dim(rng);
    std::vector<long> e;
    for (std::size_t i = 0; i < r * c; ++i) e.push_back(entry(rng));
    check_smith(IntegerMatrix(r, c, e));
  }
}

TEST_CASE("integer helpers", "[fields]") {
  auto [g, s, t] = extended_gcd(Integer(240), Integer(46));
  CHECK(g == 2);
  CHECK(Integer(240) * s + Integer(46) * t == 2);
  CHECK(exact_root(Integer(1024), 5) == Integer(4));
  CHECK(!exact_root(Integer(1000), 2));
  CHECK(determinant(IntegerMatrix(3, 3, {2, 0, 1, 1, 3, 2, 1, 1, 2})) == 6);
  CHECK(determinant(IntegerMatrix(3, 3, {2, 0, 1, 1, 3, 2, 1, 1, 1})) == 0);
}
