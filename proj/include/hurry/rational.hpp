#ifndef HURRY_RATIONAL_HPP
#define HURRY_RATIONAL_HPP

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>

namespace hurry {

using Integer = mpz_class;

// Exact fraction of arbitrary-precision integers. Always stored reduced with
// a positive denominator.
class Rational {
 public:
  Rational() = default;
  Rational(long value) : value_(value) {}  // NOLINT(google-explicit-constructor)
  Rational(int value) : value_(value) {}   // NOLINT(google-explicit-constructor)
  Rational(const Integer& numer, const Integer& denom);
  Rational(long numer, long denom) : Rational(Integer(numer), Integer(denom)) {}
  explicit Rational(const Integer& value) : value_(value) {}
  explicit Rational(mpq_class value) : value_(std::move(value)) { value_.canonicalize(); }

  // Accepts "a/b", "a", and plain decimals such as "0.999" or "-1.5e-3".
  static Rational parse(std::string_view text);

  Integer numerator() const { return value_.get_num(); }
  Integer denominator() const { return value_.get_den(); }
  const mpq_class& raw() const { return value_; }

  bool is_zero() const { return sgn(value_) == 0; }
  bool is_integer() const { return value_.get_den() == 1; }
  int sign() const { return sgn(value_); }

  Rational operator-() const { return Rational(mpq_class(-value_)); }
  Rational& operator+=(const Rational& rhs);
  Rational& operator-=(const Rational& rhs);
  Rational& operator*=(const Rational& rhs);
  Rational& operator/=(const Rational& rhs);

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

  friend bool operator==(const Rational& a, const Rational& b) { return a.value_ == b.value_; }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    const int c = cmp(a.value_, b.value_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

  // "num/den", always with the slash, e.g. "3/5", "0/1", "21/1".
  std::string str() const;
  // Integers without the "/1" suffix; fractions as "num/den".
  std::string display() const;

  double to_double() const { return value_.get_d(); }

 private:
  mpq_class value_{0};
};

Rational rat(long numer, long denom);
Rational abs(const Rational& x);
Rational pow(const Rational& base, unsigned long exponent);
Integer floor(const Rational& x);
Integer ceil(const Rational& x);

// Fixed-notation decimal with exactly `sig_digits` significant digits,
// rounded half-to-even.
std::string to_decimal(const Rational& x, int sig_digits);

std::ostream& operator<<(std::ostream& os, const Rational& x);

}  // namespace hurry

#endif  // HURRY_RATIONAL_HPP
