#ifndef HURRY_POLYNOMIAL_HPP
#define HURRY_POLYNOMIAL_HPP

#include "hurry/rational.hpp"

#include <initializer_list>
#include <string>
#include <utility>
#include <vector>

namespace hurry {

// Dense univariate polynomial in t over the rationals. coeffs()[k] is the
// coefficient of t^k. The zero polynomial has an empty coefficient vector and
// no other representation carries a trailing zero.
class Polynomial {
 public:
  Polynomial() = default;
  Polynomial(std::vector<Rational> coeffs);  // NOLINT(google-explicit-constructor)
  Polynomial(std::initializer_list<Rational> coeffs) : Polynomial(std::vector<Rational>(coeffs)) {}
  static Polynomial constant(const Rational& c) { return Polynomial(std::vector<Rational>{c}); }
  static Polynomial monomial(const Rational& c, size_t power);
  static Polynomial t() { return monomial(Rational(1), 1); }

  const std::vector<Rational>& coeffs() const { return coeffs_; }
  bool is_zero() const { return coeffs_.empty(); }
  // -1 for the zero polynomial.
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  Rational coeff(size_t k) const { return k < coeffs_.size() ? coeffs_[k] : Rational(0); }
  Rational leading() const { return coeffs_.empty() ? Rational(0) : coeffs_.back(); }
  // Index of the lowest nonzero coefficient; -1 for zero.
  int valuation() const;

  Rational operator()(const Rational& t) const;
  Polynomial derivative() const;

  Polynomial operator-() const;
  friend Polynomial operator+(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator-(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(const Polynomial& a, const Rational& c);
  friend Polynomial operator*(const Rational& c, const Polynomial& a) { return a * c; }
  friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.coeffs_ == b.coeffs_; }

  std::string str(const std::string& var = "t") const;

 private:
  void trim();
  std::vector<Rational> coeffs_;
};

// Euclidean division: a = q*b + r with deg r < deg b.
std::pair<Polynomial, Polynomial> divmod(const Polynomial& a, const Polynomial& b);
// Monic gcd; gcd(0, 0) = 0.
Polynomial gcd(Polynomial a, Polynomial b);

}  // namespace hurry

#endif  // HURRY_POLYNOMIAL_HPP
