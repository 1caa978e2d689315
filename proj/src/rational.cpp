#include "dualrisk/rational.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>

#include "dualrisk/error.hpp"

namespace dualrisk {

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

Rational parse_integer(std::string_view s, std::string_view whole) {
  bool negative = false;
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  if (!all_digits(s))
    throw Error(ErrorCode::ParseError, "not a number: '" + std::string(whole) + "'");
  mpz_class z(std::string(s), 10);
  return Rational(negative ? mpz_class(-z) : z);
}

}  // namespace

Rational parse_rational(std::string_view text) {
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
  if (text.empty()) throw Error(ErrorCode::ParseError, "empty number");

  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    Rational num = parse_integer(text.substr(0, slash), text);
    std::string_view den_text = text.substr(slash + 1);
    if (!all_digits(den_text))
      throw Error(ErrorCode::ParseError, "bad denominator in '" + std::string(text) + "'");
    mpz_class den(std::string(den_text), 10);
    if (den == 0) throw Error(ErrorCode::ParseError, "zero denominator in '" + std::string(text) + "'");
    Rational r(num.get_num(), den);
    r.canonicalize();
    return r;
  }

  if (auto dot = text.find('.'); dot != std::string_view::npos) {
    std::string_view int_part = text.substr(0, dot);
    std::string_view frac_part = text.substr(dot + 1);
    bool negative = !int_part.empty() && int_part.front() == '-';
    if (!int_part.empty() && (int_part.front() == '-' || int_part.front() == '+')) int_part.remove_prefix(1);
    if ((int_part.empty() && frac_part.empty()) || (!int_part.empty() && !all_digits(int_part)) ||
        (!frac_part.empty() && !all_digits(frac_part)))
      throw Error(ErrorCode::ParseError, "not a number: '" + std::string(text) + "'");
    std::string digits = std::string(int_part) + std::string(frac_part);
    mpz_class num(digits.empty() ? std::string("0") : digits, 10);
    mpz_class den;
    mpz_ui_pow_ui(den.get_mpz_t(), 10, frac_part.size());
    Rational r(negative ? mpz_class(-num) : num, den);
    r.canonicalize();
    return r;
  }

  return parse_integer(text, text);
}

std::string to_string(const Rational& value) {
  if (value.get_den() == 1) return value.get_num().get_str();
  return value.get_num().get_str() + "/" + value.get_den().get_str();
}

std::string format_decimal(double value, int digits) {
  if (value == 0.0) value = 0.0;  // no "-0"
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, value);
  return buf;
}

Rational fraction(long num, long den) {
  if (den == 0) throw Error(ErrorCode::DomainError, "zero denominator");
  Rational out(num, den);
  out.canonicalize();
  return out;
}

double to_double(const Rational& value) { return value.get_d(); }

int sign(const Rational& value) { return sgn(value); }

Rational pow(const Rational& base, unsigned exponent) {
  Rational result;
  mpz_pow_ui(result.get_num_mpz_t(), base.get_num_mpz_t(), exponent);
  mpz_pow_ui(result.get_den_mpz_t(), base.get_den_mpz_t(), exponent);
  result.canonicalize();
  return result;
}

Rational abs(const Rational& value) { return value < 0 ? Rational(-value) : value; }

const Rational& Number::exact() const {
  if (const auto* r = std::get_if<Rational>(&value_)) return *r;
  throw Error(ErrorCode::UnsupportedFamily, "value is not exact");
}

double Number::to_double() const {
  if (const auto* r = std::get_if<Rational>(&value_)) return r->get_d();
  return std::get<double>(value_);
}

int Number::sign() const {
  if (const auto* r = std::get_if<Rational>(&value_)) return sgn(*r);
  double d = std::get<double>(value_);
  return (d > 0) - (d < 0);
}

std::string Number::to_string() const {
  if (const auto* r = std::get_if<Rational>(&value_)) return dualrisk::to_string(*r);
  return format_decimal(std::get<double>(value_));
}

Number operator+(const Number& a, const Number& b) {
  if (a.is_exact() && b.is_exact()) return Number(Rational(a.exact() + b.exact()));
  return Number(a.to_double() + b.to_double());
}

Number operator-(const Number& a, const Number& b) {
  if (a.is_exact() && b.is_exact()) return Number(Rational(a.exact() - b.exact()));
  return Number(a.to_double() - b.to_double());
}

Number operator*(const Number& a, const Number& b) {
  if (a.is_exact() && b.is_exact()) return Number(Rational(a.exact() * b.exact()));
  return Number(a.to_double() * b.to_double());
}

Number operator/(const Number& a, const Number& b) {
  if (a.is_exact() && b.is_exact()) {
    if (b.exact() == 0) throw Error(ErrorCode::DomainError, "division by zero");
    return Number(Rational(a.exact() / b.exact()));
  }
  return Number(a.to_double() / b.to_double());
}

Number Number::operator-() const {
  if (is_exact()) return Number(Rational(-exact()));
  return Number(-to_double());
}

}  // namespace dualrisk
