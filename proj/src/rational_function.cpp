#include "hurry/rational_function.hpp"

#include <stdexcept>

namespace hurry {

namespace {

// Scales num and den by a common rational so that every coefficient is an
// integer and the joint content is 1, with the sign fixed by den's
// lowest-order coefficient.
void make_primitive(Polynomial& num, Polynomial& den) {
  Integer lcm_den(1);
  Integer content(0);
  for (const Polynomial* p : {&num, &den})
    for (const Rational& c : p->coeffs()) mpz_lcm(lcm_den.get_mpz_t(), lcm_den.get_mpz_t(), c.raw().get_den_mpz_t());
  for (const Polynomial* p : {&num, &den})
    for (const Rational& c : p->coeffs()) {
      const Integer scaled = c.numerator() * (lcm_den / c.denominator());
      mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), scaled.get_mpz_t());
    }
  Rational factor(lcm_den, content);
  if (den.coeff(static_cast<size_t>(den.valuation())).sign() < 0) factor = -factor;
  num = num * factor;
  den = den * factor;
}

}  // namespace

RationalFunction::RationalFunction(Polynomial num, Polynomial den) {
  if (den.is_zero()) throw std::domain_error("rational function with zero denominator");
  if (num.is_zero()) {
    num_ = Polynomial{};
    den_ = Polynomial::constant(Rational(1));
    return;
  }
  const Polynomial g = gcd(num, den);
  if (g.degree() > 0) {
    num = divmod(num, g).first;
    den = divmod(den, g).first;
  }
  make_primitive(num, den);
  num_ = std::move(num);
  den_ = std::move(den);
}

Rational RationalFunction::operator()(const Rational& t) const {
  const Rational d = den_(t);
  if (d.is_zero()) throw std::domain_error("rational function evaluated at a pole");
  return num_(t) / d;
}

RationalFunction RationalFunction::derivative() const {
  return RationalFunction(num_.derivative() * den_ - num_ * den_.derivative(), den_ * den_);
}

RationalFunction RationalFunction::operator-() const { return RationalFunction(-num_, den_); }

RationalFunction operator+(const RationalFunction& a, const RationalFunction& b) {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  if (a.den_ == b.den_) return RationalFunction(a.num_ + b.num_, a.den_);
  return RationalFunction(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}

RationalFunction operator-(const RationalFunction& a, const RationalFunction& b) { return a + (-b); }

RationalFunction operator*(const RationalFunction& a, const RationalFunction& b) {
  if (a.is_zero() || b.is_zero()) return {};
  return RationalFunction(a.num_ * b.num_, a.den_ * b.den_);
}

RationalFunction operator/(const RationalFunction& a, const RationalFunction& b) {
  if (b.is_zero()) throw std::domain_error("division by zero rational function");
  return RationalFunction(a.num_ * b.den_, a.den_ * b.num_);
}

std::string RationalFunction::str(const std::string& var) const {
  if (den_ == Polynomial::constant(Rational(1))) return num_.str(var);
  return "(" + num_.str(var) + ")/(" + den_.str(var) + ")";
}

RationalFunction ratfun_normalize(const Polynomial& num, const Polynomial& den) { return RationalFunction(num, den); }

std::vector<Rational> series_coeffs(const RationalFunction& f, size_t k) {
  const Polynomial& num = f.num();
  const Polynomial& den = f.den();
  const Rational d0 = den.coeff(0);
  if (d0.is_zero()) throw std::domain_error("series_coeffs: pole at the origin");
  std::vector<Rational> c(k + 1);
  for (size_t n = 0; n <= k; ++n) {
    Rational acc = num.coeff(n);
    const size_t top = std::min(n, static_cast<size_t>(std::max(den.degree(), 0)));
    for (size_t j = 1; j <= top; ++j) acc -= den.coeffs()[j] * c[n - j];
    c[n] = acc / d0;
  }
  return c;
}

}  // namespace hurry
