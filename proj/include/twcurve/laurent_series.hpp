#pragma once

/**
 * Truncated Laurent series in one variable T.
 *
 * A series stores the coefficients from its lowest exponent upwards and a
 * truncation order: every exponent >= precision() is unknown. Exact series use
 * the sentinel kExact. Arithmetic is pessimistic, so a result never claims more
 * known terms than its operands justify.
 */

#include <algorithm>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "twcurve/errors.hpp"
#include "twcurve/number_field.hpp"

namespace twc {

inline constexpr long kExact = 1L << 28;

namespace detail {
inline long prec_add(long a, long b) {
  if (a >= kExact || b >= kExact) return kExact;
  return a + b;
}
}  // namespace detail

class LaurentSeries {
 public:
  /// The exact zero series.
  LaurentSeries() = default;

  /// coeffs[k] is the coefficient of T^(low + k); unknown from `precision` on.
  LaurentSeries(long low, std::vector<FieldElement> coeffs, long precision = kExact)
      : val_(low), c_(std::move(coeffs)), prec_(precision) {
    normalize();
  }

  static LaurentSeries zero(long precision = kExact) { return LaurentSeries(0, {}, precision); }
  static LaurentSeries constant(const FieldElement& c, long precision = kExact) {
    return LaurentSeries(0, {c}, precision);
  }
  static LaurentSeries monomial(const FieldElement& c, long exponent, long precision = kExact) {
    return LaurentSeries(exponent, {c}, precision);
  }

  long precision() const { return prec_; }
  bool is_exact() const { return prec_ >= kExact; }
  /// True when every known coefficient is zero.
  bool is_zero_to_truncation() const { return c_.empty(); }
  bool is_zero() const { return c_.empty() && is_exact(); }

  /// Exponent of the first nonzero coefficient. Throws OrderUndetermined when all
  /// known coefficients vanish.
  long order() const {
    if (c_.empty())
      throw OrderUndetermined(is_exact() ? "order of the zero series"
                                         : "series is zero up to T^" + std::to_string(prec_));
    return val_;
  }
  /// Lower bound for the order, also valid for zero-to-truncation series.
  long order_bound() const { return c_.empty() ? prec_ : val_; }

  FieldElement coefficient(long n) const {
    if (n >= prec_) throw PrecisionExhausted("coefficient of T^" + std::to_string(n) + " is beyond the truncation");
    if (c_.empty() || n < val_ || n >= val_ + static_cast<long>(c_.size())) return FieldElement(0);
    return c_[static_cast<std::size_t>(n - val_)];
  }
  const FieldElement& leading_coefficient() const {
    if (c_.empty()) throw OrderUndetermined("leading coefficient of a series that is zero to truncation");
    return c_.front();
  }
  /// One past the highest stored exponent (only meaningful for nonzero series).
  long end_exponent() const { return val_ + static_cast<long>(c_.size()); }

  LaurentSeries truncated(long precision) const {
    if (precision >= prec_) return *this;
    LaurentSeries r = *this;
    r.prec_ = precision;
    r.normalize();
    return r;
  }

  LaurentSeries operator-() const {
    LaurentSeries r = *this;
    for (auto& c : r.c_) c = -c;
    return r;
  }

  friend LaurentSeries operator+(const LaurentSeries& a, const LaurentSeries& b) { return a.combine(b, false); }
  friend LaurentSeries operator-(const LaurentSeries& a, const LaurentSeries& b) { return a.combine(b, true); }

  friend LaurentSeries operator*(const LaurentSeries& a, const LaurentSeries& b) {
    long prec = std::min(detail::prec_add(a.prec_, b.order_bound()), detail::prec_add(b.prec_, a.order_bound()));
    if (a.c_.empty() || b.c_.empty()) return zero(prec);
    long low = a.val_ + b.val_;
    long high = a.end_exponent() + b.end_exponent() - 1;  // exclusive
    if (prec < kExact) high = std::min(high, prec);
    if (high <= low) return zero(prec);
    std::vector<FieldElement> out(static_cast<std::size_t>(high - low), FieldElement(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
      if (a.c_[i].is_zero()) continue;
      long ei = a.val_ + static_cast<long>(i);
      for (std::size_t j = 0; j < b.c_.size(); ++j) {
        long e = ei + b.val_ + static_cast<long>(j);
        if (e >= high) break;
        if (b.c_[j].is_zero()) continue;
        out[static_cast<std::size_t>(e - low)] += a.c_[i] * b.c_[j];
      }
    }
    return LaurentSeries(low, std::move(out), prec);
  }
  friend LaurentSeries operator*(const FieldElement& s, const LaurentSeries& a) {
    LaurentSeries r = a;
    for (auto& c : r.c_) c = s * c;
    r.normalize();
    return r;
  }

  LaurentSeries& operator+=(const LaurentSeries& o) { return *this = *this + o; }
  LaurentSeries& operator-=(const LaurentSeries& o) { return *this = *this - o; }
  LaurentSeries& operator*=(const LaurentSeries& o) { return *this = *this * o; }

  /// Multiplicative inverse. An exact series with more than one term has an
  /// infinite inverse, which is then truncated at `max_precision`.
  LaurentSeries inverse(long max_precision = kExact) const {
    const long v = order();
    long prec = detail::prec_add(prec_, -2 * v);
    if (prec >= kExact && c_.size() > 1) {
      if (max_precision >= kExact)
        throw InvalidInput("inverse of an exact multi-term series needs a precision bound");
      prec = max_precision;
    }
    prec = std::min(prec, max_precision);
    if (prec >= kExact) return monomial(c_.front().inverse(), -v);
    const long n = prec + v;  // number of coefficients from T^-v
    if (n <= 0) return zero(prec);
    FieldElement inv0 = c_.front().inverse();
    std::vector<FieldElement> out(static_cast<std::size_t>(n), FieldElement(0));
    out[0] = inv0;
    for (long k = 1; k < n; ++k) {
      FieldElement acc(0);
      for (long i = 1; i <= k && i < static_cast<long>(c_.size()); ++i)
        if (!c_[i].is_zero() && !out[k - i].is_zero()) acc += c_[i] * out[k - i];
      out[k] = -(acc * inv0);
    }
    return LaurentSeries(-v, std::move(out), prec);
  }

  LaurentSeries pow(long e, long max_precision = kExact) const {
    if (e < 0) return inverse(max_precision).pow(-e, max_precision);
    LaurentSeries result = constant(FieldElement(1)), base = *this;
    while (e > 0) {
      if (e & 1) result = (result * base).truncated(max_precision);
      e >>= 1;
      if (e) base = (base * base).truncated(max_precision);
    }
    return result;
  }

  /// s(u(T)) for a series u of order exactly 1.
  LaurentSeries compose(const LaurentSeries& u, long max_precision = kExact) const {
    if (u.order() != 1) throw InvalidInput("compose: inner series must have order 1");
    if (c_.empty()) return zero(prec_);
    long prec = std::min(prec_, detail::prec_add(val_, u.prec_ - 1));
    prec = std::min(prec, max_precision);
    if (prec >= kExact && val_ < 0 && u.c_.size() > 1)
      throw InvalidInput("compose: exact result would be infinite; give a precision bound");
    LaurentSeries acc = zero(prec);
    LaurentSeries up = u.pow(val_, prec);  // u^val
    for (std::size_t k = 0; k < c_.size(); ++k) {
      long e = val_ + static_cast<long>(k);
      if (e >= prec) break;
      if (!c_[k].is_zero()) acc += (c_[k] * up).truncated(prec);
      up = (up * u).truncated(prec);
    }
    return acc.truncated(prec);
  }

  /// s(T^q).
  LaurentSeries ramified(long q) const {
    if (q <= 0) throw InvalidInput("ramified: exponent must be positive");
    if (c_.empty()) return zero(is_exact() ? kExact : prec_ * q);
    std::vector<FieldElement> out((c_.size() - 1) * static_cast<std::size_t>(q) + 1, FieldElement(0));
    for (std::size_t k = 0; k < c_.size(); ++k) out[k * static_cast<std::size_t>(q)] = c_[k];
    return LaurentSeries(val_ * q, std::move(out), is_exact() ? kExact : prec_ * q);
  }

  /// Exact coefficient-wise equality, including the truncation order.
  friend bool operator==(const LaurentSeries& a, const LaurentSeries& b) {
    if (a.prec_ != b.prec_ || a.c_.size() != b.c_.size()) return false;
    if (a.c_.empty()) return true;
    return a.val_ == b.val_ && a.c_ == b.c_;
  }

  /// Equality on the exponents known in both series.
  friend bool agree(const LaurentSeries& a, const LaurentSeries& b) {
    long prec = std::min(a.prec_, b.prec_);
    return (a - b).truncated(prec).is_zero_to_truncation();
  }

  /// E.g. "T + 1/2*T^3 + 11/8*T^5 + O(T^6)".
  std::string to_string(const std::string& var = "T") const {
    std::string out;
    for (std::size_t k = 0; k < c_.size(); ++k) {
      const FieldElement& c = c_[k];
      if (c.is_zero()) continue;
      long e = val_ + static_cast<long>(k);
      bool rational = c.is_rational();
      bool negative = rational && sgn(c.rational_value()) < 0;
      FieldElement mag = negative ? -c : c;
      if (out.empty())
        out += negative ? "-" : "";
      else
        out += negative ? " - " : " + ";
      std::string coef = rational ? mag.to_string() : "(" + mag.to_string() + ")";
      if (e == 0) {
        out += coef;
        continue;
      }
      if (!mag.is_one()) out += coef + "*";
      out += var;
      if (e != 1) out += "^" + (e < 0 ? "(" + std::to_string(e) + ")" : std::to_string(e));
    }
    if (!is_exact()) {
      if (!out.empty()) out += " + ";
      out += "O(" + var + "^" + (prec_ < 0 ? "(" + std::to_string(prec_) + ")" : std::to_string(prec_)) + ")";
    }
    return out.empty() ? "0" : out;
  }

 private:
  LaurentSeries combine(const LaurentSeries& b, bool subtract) const {
    const LaurentSeries& a = *this;
    long prec = std::min(a.prec_, b.prec_);
    if (a.c_.empty() && b.c_.empty()) return zero(prec);
    long low = a.c_.empty() ? b.val_ : b.c_.empty() ? a.val_ : std::min(a.val_, b.val_);
    long high = std::max(a.c_.empty() ? low : a.end_exponent(), b.c_.empty() ? low : b.end_exponent());
    high = std::min(high, prec);
    if (high <= low) return zero(prec);
    std::vector<FieldElement> out(static_cast<std::size_t>(high - low), FieldElement(0));
    for (std::size_t k = 0; k < a.c_.size(); ++k) {
      long e = a.val_ + static_cast<long>(k);
      if (e >= high) break;
      out[static_cast<std::size_t>(e - low)] = a.c_[k];
    }
    for (std::size_t k = 0; k < b.c_.size(); ++k) {
      long e = b.val_ + static_cast<long>(k);
      if (e >= high) break;
      auto& slot = out[static_cast<std::size_t>(e - low)];
      slot = subtract ? slot - b.c_[k] : slot + b.c_[k];
    }
    return LaurentSeries(low, std::move(out), prec);
  }

  void normalize() {
    if (prec_ < kExact && !c_.empty()) {
      long keep = prec_ - val_;
      if (keep <= 0)
        c_.clear();
      else if (static_cast<long>(c_.size()) > keep)
        c_.resize(static_cast<std::size_t>(keep));
    }
    std::size_t lead = 0;
    while (lead < c_.size() && c_[lead].is_zero()) ++lead;
    if (lead == c_.size()) {
      c_.clear();
      val_ = 0;
      return;
    }
    if (lead > 0) {
      c_.erase(c_.begin(), c_.begin() + static_cast<long>(lead));
      val_ += static_cast<long>(lead);
    }
    while (c_.back().is_zero()) c_.pop_back();
  }

  long val_ = 0;
  std::vector<FieldElement> c_;
  long prec_ = kExact;
};

inline long series_order(const LaurentSeries& s) { return s.order(); }

}  // namespace twc
