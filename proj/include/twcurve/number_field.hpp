#pragma once

/**
 * Exact arithmetic in Q and in simple algebraic extensions Q(a) = Q[z]/(m(z)).
 *
 * Elements of Q carry no field pointer and combine with elements of any
 * extension; elements of two different extensions never mix. Irreducibility of
 * m is not verified up front: construction checks that m is squarefree and has
 * no rational root, and a failed inversion later raises ZeroDivisorDetected
 * carrying the non-trivial factor it found.
 */

#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "twcurve/errors.hpp"
#include "twcurve/rational.hpp"
#include "twcurve/upoly.hpp"

namespace twc {

namespace detail {
struct FieldData {
  QPoly modulus;  // monic minimal polynomial
  std::vector<Integer> primitive;
};
}  // namespace detail

class NumberField {
 public:
  /// The rational numbers.
  NumberField() = default;

  /// Q(a) with a a root of `minimal_polynomial` (coefficients low degree first).
  /// A degree one polynomial yields Q itself, with generator() equal to its root.
  static NumberField from_minimal_polynomial(const QPoly& minimal_polynomial) {
    if (minimal_polynomial.degree() < 1)
      throw InvalidInput("minimal polynomial must have positive degree");
    NumberField k;
    if (minimal_polynomial.degree() == 1) {
      k.rational_root_ = -minimal_polynomial[0] / minimal_polynomial[1];
      return k;
    }
    QPoly m = minimal_polynomial.monic();
    if (gcd(m, m.derivative()).degree() > 0)
      throw InvalidInput("minimal polynomial " + m.to_string("a") + " is not squarefree");
    if (!rational_roots(m).empty())
      throw InvalidInput("minimal polynomial " + m.to_string("a") + " has a rational root");
    auto data = std::make_shared<detail::FieldData>();
    data->modulus = m;
    data->primitive = m.primitive_integer();
    k.data_ = std::move(data);
    return k;
  }

  /// Ring Q[z]/(m) without the construction checks; only for exercising
  /// zero-divisor detection on reducible moduli.
  static NumberField unchecked(const QPoly& modulus) {
    NumberField k;
    auto data = std::make_shared<detail::FieldData>();
    data->modulus = modulus.monic();
    data->primitive = data->modulus.primitive_integer();
    k.data_ = std::move(data);
    return k;
  }

  int degree() const { return data_ ? data_->modulus.degree() : 1; }
  bool is_rationals() const { return data_ == nullptr; }
  const QPoly& modulus() const { return data_->modulus; }
  const Rational& rational_generator() const { return rational_root_; }
  const detail::FieldData* data() const { return data_.get(); }

  friend bool operator==(const NumberField& a, const NumberField& b) {
    if (a.data_ == b.data_) return true;
    if (!a.data_ || !b.data_) return false;
    return a.data_->modulus == b.data_->modulus;
  }

  std::string to_string() const {
    return data_ ? "Q(a), " + data_->modulus.to_string("a") + " = 0" : "Q";
  }

 private:
  std::shared_ptr<const detail::FieldData> data_;
  Rational rational_root_ = 0;
};

class FieldElement {
 public:
  FieldElement() = default;
  FieldElement(long v) : q_(v) {}  // NOLINT(google-explicit-constructor)
  FieldElement(int v) : q_(v) {}   // NOLINT(google-explicit-constructor)
  FieldElement(const Rational& v) : q_(v) { q_.canonicalize(); }  // NOLINT(google-explicit-constructor)

  /// Element of `field` with power-basis coordinates (1, a, a^2, ...).
  FieldElement(const NumberField& field, std::vector<Rational> coords) : field_(field) {
    for (auto& c : coords) c.canonicalize();
    if (field.is_rationals()) {
      q_ = coords.empty() ? Rational(0) : coords[0];
      for (std::size_t i = 1; i < coords.size(); ++i)
        if (!twc::is_zero(coords[i])) throw InvalidInput("coordinates exceed field degree");
      return;
    }
    coords.resize(std::max<std::size_t>(coords.size(), static_cast<std::size_t>(field.degree())));
    v_ = reduce(coords);
  }

  static FieldElement generator(const NumberField& field) {
    if (field.is_rationals()) return FieldElement(field.rational_generator());
    return FieldElement(field, {Rational(0), Rational(1)});
  }

  const NumberField& field() const { return field_; }
  bool is_rational() const {
    if (field_.is_rationals()) return true;
    for (std::size_t i = 1; i < v_.size(); ++i)
      if (!twc::is_zero(v_[i])) return false;
    return true;
  }
  /// Only meaningful when is_rational().
  Rational rational_value() const { return field_.is_rationals() ? q_ : v_[0]; }

  std::vector<Rational> coordinates() const {
    if (field_.is_rationals()) return {q_};
    return v_;
  }

  bool is_zero() const {
    if (field_.is_rationals()) return twc::is_zero(q_);
    for (const auto& c : v_)
      if (!twc::is_zero(c)) return false;
    return true;
  }
  bool is_one() const { return is_rational() && rational_value() == 1; }

  FieldElement operator-() const {
    FieldElement r = *this;
    if (field_.is_rationals())
      r.q_ = -q_;
    else
      for (auto& c : r.v_) c = -c;
    return r;
  }

  friend FieldElement operator+(const FieldElement& a, const FieldElement& b) {
    if (a.field_.is_rationals() && b.field_.is_rationals()) return FieldElement(Rational(a.q_ + b.q_));
    NumberField k = common_field(a, b);
    auto x = a.lifted(k), y = b.lifted(k);
    for (std::size_t i = 0; i < x.size(); ++i) x[i] += y[i];
    return FieldElement(k, std::move(x), RawTag{});
  }
  friend FieldElement operator-(const FieldElement& a, const FieldElement& b) {
    if (a.field_.is_rationals() && b.field_.is_rationals()) return FieldElement(Rational(a.q_ - b.q_));
    NumberField k = common_field(a, b);
    auto x = a.lifted(k), y = b.lifted(k);
    for (std::size_t i = 0; i < x.size(); ++i) x[i] -= y[i];
    return FieldElement(k, std::move(x), RawTag{});
  }
  friend FieldElement operator*(const FieldElement& a, const FieldElement& b) {
    if (a.field_.is_rationals() && b.field_.is_rationals()) return FieldElement(Rational(a.q_ * b.q_));
    NumberField k = common_field(a, b);
    if (a.field_.is_rationals() || b.field_.is_rationals()) {
      const Rational& s = a.field_.is_rationals() ? a.q_ : b.q_;
      auto x = a.field_.is_rationals() ? b.v_ : a.v_;
      for (auto& c : x) c *= s;
      return FieldElement(k, std::move(x), RawTag{});
    }
    const int d = k.degree();
    std::vector<Rational> prod(static_cast<std::size_t>(2 * d - 1));
    for (int i = 0; i < d; ++i) {
      if (twc::is_zero(a.v_[i])) continue;
      for (int j = 0; j < d; ++j) prod[i + j] += a.v_[i] * b.v_[j];
    }
    FieldElement r;
    r.field_ = k;
    r.v_ = r.reduce(prod);
    return r;
  }

  FieldElement inverse() const {
    if (is_zero()) throw InvalidInput("division by zero");
    if (field_.is_rationals()) return FieldElement(Rational(1 / q_));
    QPoly self(v_);
    auto [g, s, t] = xgcd(self, field_.modulus());
    if (g.degree() > 0)
      throw ZeroDivisorDetected("modulus " + field_.modulus().to_string("a") +
                                " is reducible: common factor " + g.to_string("a"));
    std::vector<Rational> coords = s.coeffs();
    return FieldElement(field_, std::move(coords));
  }

  friend FieldElement operator/(const FieldElement& a, const FieldElement& b) { return a * b.inverse(); }

  FieldElement& operator+=(const FieldElement& o) { return *this = *this + o; }
  FieldElement& operator-=(const FieldElement& o) { return *this = *this - o; }
  FieldElement& operator*=(const FieldElement& o) { return *this = *this * o; }
  FieldElement& operator/=(const FieldElement& o) { return *this = *this / o; }

  /// Integer power; negative exponents invert.
  FieldElement pow(long e) const {
    if (e < 0) return inverse().pow(-e);
    FieldElement result(1), base = *this;
    while (e > 0) {
      if (e & 1) result = result * base;
      e >>= 1;
      if (e) base = base * base;
    }
    return result;
  }

  friend bool operator==(const FieldElement& a, const FieldElement& b) {
    if (a.field_.is_rationals() && b.field_.is_rationals()) return a.q_ == b.q_;
    if (a.field_.is_rationals() || b.field_.is_rationals()) {
      const FieldElement& ext = a.field_.is_rationals() ? b : a;
      const FieldElement& rat = a.field_.is_rationals() ? a : b;
      return ext.is_rational() && ext.v_[0] == rat.q_;
    }
    return a.field_ == b.field_ && a.v_ == b.v_;
  }
  friend bool operator!=(const FieldElement& a, const FieldElement& b) { return !(a == b); }

  /// Deterministic total order: coordinates compared with canonical_less, lowest first.
  friend bool canonical_less(const FieldElement& a, const FieldElement& b) {
    auto x = a.coordinates(), y = b.coordinates();
    std::size_t n = std::max(x.size(), y.size());
    x.resize(n);
    y.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
      if (x[i] == y[i]) continue;
      return canonical_less(x[i], y[i]);
    }
    return false;
  }

  /// "p/q" for rationals, otherwise a polynomial in a, e.g. "a^2 - 1/2".
  std::string to_string() const {
    if (is_rational()) return rational_value().get_str();
    return QPoly(v_).to_string("a");
  }

 private:
  struct RawTag {};
  FieldElement(const NumberField& k, std::vector<Rational> coords, RawTag) : field_(k), v_(std::move(coords)) {}

  static NumberField common_field(const FieldElement& a, const FieldElement& b) {
    if (a.field_.is_rationals()) return b.field_;
    if (b.field_.is_rationals()) return a.field_;
    if (!(a.field_ == b.field_)) throw InvalidInput("elements of different number fields");
    return a.field_;
  }

  std::vector<Rational> lifted(const NumberField& k) const {
    if (!field_.is_rationals()) return v_;
    std::vector<Rational> x(static_cast<std::size_t>(k.degree()));
    x[0] = q_;
    return x;
  }

  std::vector<Rational> reduce(std::vector<Rational> p) const {
    const QPoly& m = field_.modulus();
    const int d = m.degree();
    for (int i = static_cast<int>(p.size()) - 1; i >= d; --i) {
      if (twc::is_zero(p[i])) continue;
      Rational f = p[i];
      for (int k = 0; k <= d; ++k) p[i - d + k] -= f * m[k];
    }
    p.resize(static_cast<std::size_t>(d));
    return p;
  }

  NumberField field_;
  Rational q_ = 0;
  std::vector<Rational> v_;
};

inline bool is_zero(const FieldElement& a) { return a.is_zero(); }

}  // namespace twc
