#ifndef HURRY_DECIMAL_HPP
#define HURRY_DECIMAL_HPP

#include "hurry/rational.hpp"

#include <boost/multiprecision/cpp_bin_float.hpp>

#include <string>

namespace hurry {

// Fixed-precision backend for large searches: 50 significant decimal digits.
using Decimal = boost::multiprecision::cpp_bin_float_50;

Decimal to_decimal_value(const Rational& x);
// Exact: every finite Decimal is a dyadic rational.
Rational to_rational(const Decimal& x);
std::string to_decimal(const Decimal& x, int sig_digits);

}  // namespace hurry

#endif  // HURRY_DECIMAL_HPP
