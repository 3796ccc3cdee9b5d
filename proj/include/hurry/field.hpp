#ifndef HURRY_FIELD_HPP
#define HURRY_FIELD_HPP

#include "hurry/decimal.hpp"
#include "hurry/rational.hpp"
#include "hurry/rational_function.hpp"

namespace hurry {

// Scalar fields the chain solver and the DP are instantiated over.
template <class T>
struct FieldTraits;

template <>
struct FieldTraits<Rational> {
  static Rational from_rational(const Rational& x) { return x; }
  static bool is_zero(const Rational& x) { return x.is_zero(); }
  // Larger is preferred when the solver has to pick a pivot.
  static Rational pivot_score(const Rational& x) { return abs(x); }
  static constexpr const char* name = "exact";
};

template <>
struct FieldTraits<Decimal> {
  static Decimal from_rational(const Rational& x) { return to_decimal_value(x); }
  static bool is_zero(const Decimal& x) { return x == 0; }
  static Decimal pivot_score(const Decimal& x) { return boost::multiprecision::abs(x); }
  static constexpr const char* name = "decimal";
};

template <>
struct FieldTraits<RationalFunction> {
  static RationalFunction from_rational(const Rational& x) { return RationalFunction(x); }
  static bool is_zero(const RationalFunction& x) { return x.is_zero(); }
  // Lowest-degree entries make the best pivots over Q(t).
  static int pivot_score(const RationalFunction& x) { return -(x.num().degree() + x.den().degree()); }
  static constexpr const char* name = "exact";
};

}  // namespace hurry

#endif  // HURRY_FIELD_HPP
