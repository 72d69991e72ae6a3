#pragma once

#include <compare>
#include <string>

#include <gmpxx.h>

#include "braidstat/laurent.hpp"

#include "json.hpp"

namespace braidstat {

/// Exact rational, always in lowest terms with a positive denominator.
class Rational {
 public:
  Rational() = default;
  Rational(long v) : q_(v) {}  // NOLINT(google-explicit-constructor)
  explicit Rational(const BigInt& v) : q_(v) {}
  Rational(const BigInt& num, const BigInt& den);

  BigInt num() const { return q_.get_num(); }
  BigInt den() const { return q_.get_den(); }
  bool is_zero() const { return q_ == 0; }

  Rational& operator+=(const Rational& o) { q_ += o.q_; return *this; }
  Rational& operator-=(const Rational& o) { q_ -= o.q_; return *this; }
  Rational& operator*=(const Rational& o) { q_ *= o.q_; return *this; }
  Rational& operator/=(const Rational& o);

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
  Rational operator-() const;

  friend bool operator==(const Rational& a, const Rational& b) { return a.q_ == b.q_; }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    const int c = cmp(a.q_, b.q_);
    return c < 0 ? std::strong_ordering::less : c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal;
  }

  // r^e for e >= 0.
  static Rational pow(const Rational& r, unsigned long e);

  double to_double() const { return q_.get_d(); }

 private:
  mpq_class q_;
};

Rational abs(const Rational& r);

/// "num/den", or "num" when den == 1.
std::string to_string(const Rational& r);

/// Decimal rendering rounded to `digits` significant digits (half away from
/// zero), in the style of printf's %g: fixed notation for exponents in
/// [-4, digits), scientific otherwise, trailing zeros dropped.
std::string to_decimal(const Rational& r, int digits = 12);

/// {"num": "...", "den": "...", "decimal": "..."}
nlohmann::ordered_json to_json(const Rational& r);
Rational rational_from_json(const nlohmann::ordered_json& j);

}  // namespace braidstat
