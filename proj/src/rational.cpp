#include "hurry/rational.hpp"

#include <algorithm>
#include <cctype>
#include <ostream>
#include <stdexcept>

namespace hurry {

namespace {

Integer pow10(unsigned long e) {
  Integer r;
  mpz_ui_pow_ui(r.get_mpz_t(), 10, e);
  return r;
}

bool all_digits(std::string_view s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isdigit(c); });
}

Integer parse_integer(std::string_view s, std::string_view whole) {
  std::string_view digits = s;
  if (!digits.empty() && (digits.front() == '-' || digits.front() == '+')) digits.remove_prefix(1);
  if (!all_digits(digits)) throw std::invalid_argument("invalid rational: '" + std::string(whole) + "'");
  Integer r;
  r.set_str(std::string(digits), 10);
  return s.front() == '-' ? Integer(-r) : r;
}

}  // namespace

Rational::Rational(const Integer& numer, const Integer& denom) {
  if (denom == 0) throw std::domain_error("rational with zero denominator");
  value_ = mpq_class(numer, denom);
  value_.canonicalize();
}

Rational Rational::parse(std::string_view text) {
  std::string_view s = text;
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  if (s.empty()) throw std::invalid_argument("invalid rational: empty string");

  if (auto slash = s.find('/'); slash != std::string_view::npos) {
    Integer num = parse_integer(s.substr(0, slash), text);
    Integer den = parse_integer(s.substr(slash + 1), text);
    if (den == 0) throw std::invalid_argument("invalid rational: zero denominator in '" + std::string(text) + "'");
    return Rational(num, den);
  }

  // Decimal literal with optional exponent.
  long exponent = 0;
  if (auto e = s.find_first_of("eE"); e != std::string_view::npos) {
    Integer ex = parse_integer(s.substr(e + 1), text);
    if (!ex.fits_slong_p()) throw std::invalid_argument("invalid rational: exponent out of range in '" + std::string(text) + "'");
    exponent = ex.get_si();
    s = s.substr(0, e);
  }
  bool negative = false;
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  std::string digits;
  long frac_len = 0;
  if (auto dot = s.find('.'); dot != std::string_view::npos) {
    std::string_view ip = s.substr(0, dot);
    std::string_view fp = s.substr(dot + 1);
    if ((!ip.empty() && !all_digits(ip)) || (!fp.empty() && !all_digits(fp)) || (ip.empty() && fp.empty()))
      throw std::invalid_argument("invalid rational: '" + std::string(text) + "'");
    digits = std::string(ip) + std::string(fp);
    frac_len = static_cast<long>(fp.size());
  } else {
    if (!all_digits(s)) throw std::invalid_argument("invalid rational: '" + std::string(text) + "'");
    digits = std::string(s);
  }
  Integer mantissa;
  mantissa.set_str(digits, 10);
  if (negative) mantissa = -mantissa;
  const long shift = exponent - frac_len;
  if (shift >= 0) return Rational(Integer(mantissa * pow10(static_cast<unsigned long>(shift))));
  return Rational(mantissa, pow10(static_cast<unsigned long>(-shift)));
}

Rational& Rational::operator+=(const Rational& rhs) {
  value_ += rhs.value_;
  return *this;
}

Rational& Rational::operator-=(const Rational& rhs) {
  value_ -= rhs.value_;
  return *this;
}

Rational& Rational::operator*=(const Rational& rhs) {
  value_ *= rhs.value_;
  return *this;
}

Rational& Rational::operator/=(const Rational& rhs) {
  if (rhs.is_zero()) throw std::domain_error("division by zero rational");
  value_ /= rhs.value_;
  return *this;
}

std::string Rational::str() const {
  return value_.get_num().get_str() + "/" + value_.get_den().get_str();
}

std::string Rational::display() const {
  return is_integer() ? value_.get_num().get_str() : str();
}

Rational rat(long numer, long denom) { return Rational(numer, denom); }

Rational abs(const Rational& x) { return x.sign() < 0 ? -x : x; }

Rational pow(const Rational& base, unsigned long exponent) {
  Integer n, d;
  mpz_pow_ui(n.get_mpz_t(), base.raw().get_num_mpz_t(), exponent);
  mpz_pow_ui(d.get_mpz_t(), base.raw().get_den_mpz_t(), exponent);
  return Rational(n, d);
}

Integer floor(const Rational& x) {
  Integer r;
  mpz_fdiv_q(r.get_mpz_t(), x.raw().get_num_mpz_t(), x.raw().get_den_mpz_t());
  return r;
}

Integer ceil(const Rational& x) {
  Integer r;
  mpz_cdiv_q(r.get_mpz_t(), x.raw().get_num_mpz_t(), x.raw().get_den_mpz_t());
  return r;
}

std::string to_decimal(const Rational& x, int sig_digits) {
  if (sig_digits < 1) throw std::invalid_argument("to_decimal: sig_digits must be >= 1");
  if (x.is_zero()) return sig_digits == 1 ? "0" : "0." + std::string(sig_digits - 1, '0');

  const Integer a = abs(x.numerator());
  const Integer b = x.denominator();

  // 10^e <= a/b < 10^(e+1)
  long e = static_cast<long>(mpz_sizeinbase(a.get_mpz_t(), 10)) -
           static_cast<long>(mpz_sizeinbase(b.get_mpz_t(), 10));
  auto below = [&](long ex) {  // a/b < 10^ex
    return ex >= 0 ? a < b * pow10(static_cast<unsigned long>(ex))
                   : a * pow10(static_cast<unsigned long>(-ex)) < b;
  };
  while (below(e)) --e;
  while (!below(e + 1)) ++e;

  long k = sig_digits - 1 - e;  // value = q * 10^-k
  Integer num = a, den = b;
  if (k >= 0) num *= pow10(static_cast<unsigned long>(k));
  else den *= pow10(static_cast<unsigned long>(-k));
  Integer q, r;
  mpz_tdiv_qr(q.get_mpz_t(), r.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
  const int half = cmp(Integer(2 * r), den);
  if (half > 0 || (half == 0 && mpz_odd_p(q.get_mpz_t()))) ++q;
  if (q == pow10(static_cast<unsigned long>(sig_digits))) {
    q /= 10;
    --k;
  }

  std::string digits = q.get_str();
  std::string out = x.sign() < 0 ? "-" : "";
  if (k <= 0) {
    out += digits + std::string(static_cast<size_t>(-k), '0');
  } else if (static_cast<size_t>(k) >= digits.size()) {
    out += "0." + std::string(static_cast<size_t>(k) - digits.size(), '0') + digits;
  } else {
    out += digits.substr(0, digits.size() - k) + "." + digits.substr(digits.size() - k);
  }
  return out;
}

std::ostream& operator<<(std::ostream& os, const Rational& x) { return os << x.str(); }

}  // namespace hurry
