#pragma once

// Arbitrary precision integers and rationals (GMP) plus the few number
// theoretic helpers the rest of the library needs.

#include <gmpxx.h>

#include <algorithm>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "twcurve/errors.hpp"

namespace twc {

using Integer = mpz_class;
using Rational = mpq_class;

inline bool is_zero(const Rational& q) { return sgn(q) == 0; }

inline Rational make_rational(const Integer& num, const Integer& den) {
  if (den == 0) throw InvalidInput("rational with zero denominator");
  Rational q(num, den);
  q.canonicalize();
  return q;
}

inline std::string to_string(const Integer& z) { return z.get_str(); }
inline std::string to_string(const Rational& q) { return q.get_str(); }

/// Parses "p", "-p" or "p/q".
inline Rational parse_rational(std::string_view text) {
  std::string s(text);
  auto valid = [](const std::string& part) {
    if (part.empty()) return false;
    std::size_t start = (part[0] == '-' || part[0] == '+') ? 1 : 0;
    if (start == part.size()) return false;
    return std::all_of(part.begin() + static_cast<long>(start), part.end(),
                       [](char c) { return c >= '0' && c <= '9'; });
  };
  auto slash = s.find('/');
  std::string num = s.substr(0, slash);
  std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
  if (!valid(num) || !valid(den) || den[0] == '-' || den[0] == '+')
    throw InvalidInput("malformed rational literal '" + s + "'");
  if (num[0] == '+') num.erase(0, 1);
  return make_rational(Integer(num), Integer(den));
}

/// Exact d-th root of a non-negative integer, if it exists.
inline std::optional<Integer> exact_root(const Integer& n, unsigned long d) {
  if (n < 0 || d == 0) return std::nullopt;
  Integer r;
  if (mpz_root(r.get_mpz_t(), n.get_mpz_t(), d) == 0) return std::nullopt;
  return r;
}

inline Integer gcd(const Integer& a, const Integer& b) {
  Integer g;
  mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return g;
}

inline Integer lcm(const Integer& a, const Integer& b) {
  Integer l;
  mpz_lcm(l.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return l;
}

/// g = s*a + t*b with g = gcd(a, b) >= 0.
struct ExtendedGcd {
  Integer g, s, t;
};

inline ExtendedGcd extended_gcd(const Integer& a, const Integer& b) {
  ExtendedGcd r;
  mpz_gcdext(r.g.get_mpz_t(), r.s.get_mpz_t(), r.t.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

namespace detail {

inline Integer pollard_brent(const Integer& n) {
  if (n % 2 == 0) return 2;
  for (unsigned long c = 1;; ++c) {
    Integer x = 2, y = 2, d = 1;
    auto f = [&](const Integer& v) {
      Integer r = v * v + c;
      return Integer(r % n);
    };
    while (d == 1) {
      x = f(x);
      y = f(f(y));
      Integer diff = x - y;
      d = gcd(abs(diff), n);
    }
    if (d != n) return d;
  }
}

inline void factor_into(Integer n, std::vector<Integer>& primes) {
  if (n <= 1) return;
  if (mpz_probab_prime_p(n.get_mpz_t(), 30) > 0) {
    primes.push_back(n);
    return;
  }
  Integer d = pollard_brent(n);
  factor_into(d, primes);
  factor_into(n / d, primes);
}

}  // namespace detail

/// Prime factorisation of |n| as (prime, multiplicity) pairs, primes ascending.
inline std::vector<std::pair<Integer, unsigned>> factor_integer(const Integer& value) {
  Integer n = abs(value);
  std::vector<Integer> primes;
  for (unsigned long p = 2; p < 1000 && n > 1; ++p) {
    while (n % p == 0) {
      primes.emplace_back(p);
      n /= p;
    }
  }
  detail::factor_into(n, primes);
  std::sort(primes.begin(), primes.end());
  std::vector<std::pair<Integer, unsigned>> out;
  for (const auto& p : primes) {
    if (!out.empty() && out.back().first == p)
      ++out.back().second;
    else
      out.emplace_back(p, 1u);
  }
  return out;
}

/// Positive divisors of |n| (n != 0), ascending.
inline std::vector<Integer> divisors(const Integer& n) {
  std::vector<Integer> divs{1};
  for (const auto& [p, k] : factor_integer(n)) {
    std::size_t count = divs.size();
    Integer power = 1;
    for (unsigned e = 1; e <= k; ++e) {
      power *= p;
      for (std::size_t i = 0; i < count; ++i) divs.push_back(divs[i] * power);
    }
  }
  std::sort(divs.begin(), divs.end());
  return divs;
}

/// Canonical total order used to enumerate roots deterministically:
/// smaller absolute value first, and the positive value before its negative.
inline bool canonical_less(const Rational& a, const Rational& b) {
  int c = cmp(abs(a), abs(b));
  if (c != 0) return c < 0;
  return sgn(a) > sgn(b);
}

}  // namespace twc
