#include "hurry/decimal.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <limits>
#include <stdexcept>

namespace hurry {

namespace {

Integer to_integer(const boost::multiprecision::cpp_int& v) {
  Integer r;
  r.set_str(v.str(), 10);
  return r;
}

boost::multiprecision::cpp_int to_cpp_int(const Integer& v) { return boost::multiprecision::cpp_int(v.get_str()); }

}  // namespace

Decimal to_decimal_value(const Rational& x) {
  return Decimal(to_cpp_int(x.numerator())) / Decimal(to_cpp_int(x.denominator()));
}

Rational to_rational(const Decimal& x) {
  if (!boost::multiprecision::isfinite(x)) throw std::domain_error("non-finite decimal value");
  if (x == 0) return Rational(0);
  int exponent = 0;
  const Decimal mantissa = boost::multiprecision::frexp(x, &exponent);
  constexpr int bits = std::numeric_limits<Decimal>::digits;
  const Decimal scaled = boost::multiprecision::ldexp(mantissa, bits);
  const Integer m = to_integer(scaled.convert_to<boost::multiprecision::cpp_int>());
  const long shift = static_cast<long>(exponent) - bits;
  Integer two_pow;
  mpz_ui_pow_ui(two_pow.get_mpz_t(), 2, static_cast<unsigned long>(shift >= 0 ? shift : -shift));
  return shift >= 0 ? Rational(Integer(m * two_pow)) : Rational(m, two_pow);
}

std::string to_decimal(const Decimal& x, int sig_digits) { return to_decimal(to_rational(x), sig_digits); }

}  // namespace hurry
