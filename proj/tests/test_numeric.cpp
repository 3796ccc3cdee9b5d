#include <doctest.h>

#include "hurry/decimal.hpp"
#include "hurry/field.hpp"
#include "support.hpp"

#include <numeric>
#include <stdexcept>

using namespace hurry;
using hurry::testing::poly;

namespace {

// Schoolbook long division to `sig` significant digits, half-even rounding on
// the exact remainder. Positive x only.
std::string long_division(long num, long den, int sig) {
  long int_part = num / den, rem = num % den;
  std::string ip = std::to_string(int_part);
  int lead = int_part == 0 ? 0 : static_cast<int>(ip.size());
  std::vector<int> d;
  for (char c : ip) d.push_back(c - '0');
  if (int_part == 0) d.clear();
  bool started = int_part != 0;
  int skipped = 0;
  while (static_cast<int>(d.size()) < sig) {
    rem *= 10;
    int q = static_cast<int>(rem / den);
    rem %= den;
    if (!started && q == 0) {
      ++skipped;
      continue;
    }
    started = true;
    d.push_back(q);
  }
  // next digit and remainder decide rounding
  long r2 = rem * 2;
  bool up = r2 > den || (r2 == den && (d.back() % 2 == 1));
  if (up) {
    int k = static_cast<int>(d.size()) - 1;
    while (k >= 0 && d[k] == 9) d[k--] = 0;
    if (k >= 0) ++d[k];
    else {
      d.insert(d.begin(), 1);
      if (lead > 0) ++lead;
      else if (skipped > 0) --skipped;
      d.pop_back();
    }
  }
  std::string out;
  if (lead > 0) {
    for (int k = 0; k < lead; ++k) out += char('0' + d[k]);
    if (static_cast<int>(d.size()) > lead) out += '.';
    for (size_t k = lead; k < d.size(); ++k) out += char('0' + d[k]);
  } else {
    out = "0." + std::string(skipped, '0');
    for (int v : d) out += char('0' + v);
  }
  return out;
}

}  // namespace

TEST_CASE("rat reduces and normalizes sign") {
  CHECK(rat(2, 4).str() == "1/2");
  CHECK(rat(3, -6).str() == "-1/2");
  CHECK(rat(0, 7).str() == "0/1");
  CHECK_THROWS_AS(rat(1, 0), std::domain_error);
}

TEST_CASE("rational parsing") {
  CHECK(Rational::parse("3/5") == rat(3, 5));
  CHECK(Rational::parse("0.6") == rat(3, 5));
  CHECK(Rational::parse("-12") == Rational(-12));
  CHECK(Rational::parse("1e-3") == rat(1, 1000));
  CHECK(Rational::parse(" 4/6 ") == rat(2, 3));
  CHECK_THROWS_AS(Rational::parse("abc"), std::invalid_argument);
  CHECK_THROWS_AS(Rational::parse("1/"), std::invalid_argument);
  CHECK_THROWS(Rational::parse("1/0"));
}

TEST_CASE("field identities on random rationals") {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<long> n(-1000, 1000), d(1, 1000);
  for (int k = 0; k < 500; ++k) {
    const Rational a = rat(n(rng), d(rng)), b = rat(n(rng), d(rng));
    CHECK((a + b) - b == a);
    CHECK(a * b == b * a);
    if (!a.is_zero()) CHECK(a * (Rational(1) / a) == Rational(1));
  }
  CHECK_THROWS_AS(Rational(1) / Rational(0), std::domain_error);
}

TEST_CASE("to_decimal matches long division") {
  CHECK(to_decimal(rat(1, 7), 10) == "0.1428571429");
  CHECK(to_decimal(rat(3, 5), 3) == "0.600");
  CHECK(to_decimal(rat(12, 7), 10) == "1.714285714");
  CHECK(to_decimal(rat(12, 7), 10) == long_division(12, 7, 10));
  CHECK(to_decimal(rat(1, 8), 2) == "0.12");   // half-even down
  CHECK(to_decimal(rat(3, 8), 2) == "0.38");   // half-even up
  CHECK(to_decimal(rat(9999, 10000), 3) == "1.00");
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<long> n(1, 100000), d(1, 9999);
  for (int k = 0; k < 300; ++k) {
    const long a = n(rng), b = d(rng);
    for (int sig : {1, 4, 10}) {
      const std::string mine = to_decimal(rat(a, b), sig);
      const std::string oracle = long_division(a / std::gcd(a, b), b / std::gcd(a, b), sig);
      // Integers wider than sig digits print whole; compare only where both are fixed-width.
      if (mine.find('.') != std::string::npos && oracle.find('.') != std::string::npos) CHECK(mine == oracle);
    }
  }
}

TEST_CASE("decimal backend round trip") {
  const Decimal x = to_decimal_value(rat(1, 3));
  CHECK(to_decimal(x, 30) == "0.333333333333333333333333333333");
  CHECK(to_rational(Decimal(0.75)) == rat(3, 4));
  const Rational back = to_rational(x);
  CHECK(abs(back - rat(1, 3)) < Rational::parse("1e-45"));
}

TEST_CASE("polynomial arithmetic and gcd") {
  const Polynomial a = poly({-1, 0, 1});  // t^2 - 1
  const Polynomial b = poly({1, 1});      // t + 1
  const auto [q, r] = divmod(a, b);
  CHECK(q == poly({-1, 1}));
  CHECK(r.is_zero());
  CHECK(gcd(a, poly({1, 2, 1})) == poly({1, 1}));
  CHECK(gcd(Polynomial(), Polynomial()).is_zero());
  CHECK(Polynomial({Rational(0), Rational(0)}).is_zero());
  CHECK(poly({0, 6, 1}).str() == "6*t+t^2");
  CHECK(poly({1, 2, 3}).derivative() == poly({2, 6}));
  CHECK(poly({1, 2, 3})(Rational(2)) == Rational(17));
  CHECK(poly({0, 0, 5}).valuation() == 2);
}

TEST_CASE("ratfun_normalize canonical forms") {
  CHECK(ratfun_normalize(poly({0, 0, 1}), poly({0, 2})) == RationalFunction(poly({0, 1}), poly({2})));
  const RationalFunction f = ratfun_normalize(-poly({0, 6, 1}), poly({-9, 0, 2}));
  CHECK(f.num() == poly({0, 6, 1}));
  CHECK(f.den() == poly({9, 0, -2}));
  const RationalFunction z = ratfun_normalize(Polynomial(), poly({5, 1}));
  CHECK(z.is_zero());
  CHECK(z.den() == poly({1}));
  CHECK_THROWS_AS(RationalFunction(poly({1}), Polynomial()), std::domain_error);
}

TEST_CASE("ratfun equality survives a common factor") {
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<long> c(-5, 5);
  for (int k = 0; k < 100; ++k) {
    const Polynomial n = poly({c(rng), c(rng), c(rng)});
    Polynomial d = poly({c(rng), c(rng), 1});
    Polynomial m = poly({c(rng), c(rng)});
    if (d.is_zero() || m.is_zero()) continue;
    CHECK(RationalFunction(n, d) == RationalFunction(n * m, d * m));
  }
}

TEST_CASE("series_coeffs") {
  const RationalFunction f(poly({0, 6, 1}), poly({9, 0, -2}));
  CHECK(series_coeffs(f, 4) == std::vector<Rational>{0, rat(2, 3), rat(1, 9), rat(4, 27), rat(2, 81)});
  const RationalFunction g(poly({0, 0, 1}), poly({9, 0, -2}));
  CHECK(series_coeffs(g, 4) == std::vector<Rational>{0, 0, rat(1, 9), 0, rat(2, 81)});
  CHECK(series_coeffs(RationalFunction(Rational(1)), 3) == std::vector<Rational>{1, 0, 0, 0});
  CHECK_THROWS_AS(series_coeffs(RationalFunction(poly({1}), poly({0, 1})), 2), std::domain_error);
}

TEST_CASE("series re-summed against the function has high valuation") {
  std::mt19937_64 rng(9);
  std::uniform_int_distribution<long> c(-6, 6);
  for (int k = 0; k < 60; ++k) {
    const long d0 = c(rng);
    if (d0 == 0) continue;
    const RationalFunction f(poly({c(rng), c(rng), c(rng)}), poly({d0, c(rng), c(rng)}));
    const size_t order = 8;
    const Polynomial partial(series_coeffs(f, order));
    const Polynomial resid = f.num() - f.den() * partial;
    CHECK((resid.is_zero() || resid.valuation() > static_cast<int>(order)));
  }
}

TEST_CASE("rational function evaluation and derivative") {
  const RationalFunction f(poly({0, 6, 1}), poly({9, 0, -2}));
  CHECK(f(Rational(1)) == Rational(1));
  // (6+2t)(9-2t^2) + 4t(6t+t^2) at t=1 over 49
  CHECK(f.derivative()(Rational(1)) == rat(8 * 7 + 4 * 7, 49));
  const RationalFunction pole(poly({1}), poly({1, -1}));
  CHECK_THROWS_AS(pole(Rational(1)), std::domain_error);
}

TEST_CASE("field traits") {
  CHECK(FieldTraits<Rational>::is_zero(Rational(0)));
  CHECK(FieldTraits<Decimal>::from_rational(rat(1, 4)) == Decimal(0.25));
  CHECK(FieldTraits<RationalFunction>::is_zero(RationalFunction()));
}
