#ifndef HURRY_RATIONAL_FUNCTION_HPP
#define HURRY_RATIONAL_FUNCTION_HPP

#include "hurry/polynomial.hpp"

#include <string>
#include <vector>

namespace hurry {

// Reduced quotient num/den of polynomials in t.
//
// Canonical form: gcd(num, den) = 1, all coefficients of num and den are
// integers with no common content, and the lowest-order nonzero coefficient
// of den is positive. Two rational functions are equal iff their canonical
// forms are identical, so operator== is structural.
class RationalFunction {
 public:
  RationalFunction() : den_(Polynomial::constant(Rational(1))) {}
  RationalFunction(const Rational& c)  // NOLINT(google-explicit-constructor)
      : RationalFunction(Polynomial::constant(c), Polynomial::constant(Rational(1))) {}
  RationalFunction(Polynomial num, Polynomial den);  // throws on den == 0

  const Polynomial& num() const { return num_; }
  const Polynomial& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }

  // Throws std::domain_error if t is a pole.
  Rational operator()(const Rational& t) const;
  RationalFunction derivative() const;

  RationalFunction operator-() const;
  friend RationalFunction operator+(const RationalFunction& a, const RationalFunction& b);
  friend RationalFunction operator-(const RationalFunction& a, const RationalFunction& b);
  friend RationalFunction operator*(const RationalFunction& a, const RationalFunction& b);
  friend RationalFunction operator/(const RationalFunction& a, const RationalFunction& b);
  RationalFunction& operator+=(const RationalFunction& b) { return *this = *this + b; }
  RationalFunction& operator-=(const RationalFunction& b) { return *this = *this - b; }
  RationalFunction& operator*=(const RationalFunction& b) { return *this = *this * b; }
  RationalFunction& operator/=(const RationalFunction& b) { return *this = *this / b; }
  friend bool operator==(const RationalFunction& a, const RationalFunction& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }

  std::string str(const std::string& var = "t") const;

 private:
  Polynomial num_;
  Polynomial den_;
};

RationalFunction ratfun_normalize(const Polynomial& num, const Polynomial& den);

// Maclaurin coefficients c_0..c_k. Requires den(0) != 0.
std::vector<Rational> series_coeffs(const RationalFunction& f, size_t k);

}  // namespace hurry

#endif  // HURRY_RATIONAL_FUNCTION_HPP
