#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>
#include <variant>

namespace dualrisk {

/// Arbitrary-precision rational, always kept in lowest terms with a positive
/// denominator.
using Rational = mpq_class;

/// Parses `p/q`, an integer, or a plain decimal such as `-0.125`.
/// Throws Error(ParseError) on malformed input or a zero denominator.
Rational parse_rational(std::string_view text);

/// `p/q`, or just `p` when the denominator is one.
std::string to_string(const Rational& value);

/// Decimal rendering with `digits` significant digits (printf `%.*g`).
std::string format_decimal(double value, int digits = 12);

/// num/den in canonical form (a bare two-argument mpq_class is not reduced).
Rational fraction(long num, long den);

double to_double(const Rational& value);
int sign(const Rational& value);
Rational pow(const Rational& base, unsigned exponent);
Rational abs(const Rational& value);

/// A value that is exact whenever the computation that produced it was exact,
/// and a double otherwise. Mixed arithmetic degrades to double.
class Number {
 public:
  Number() : value_(Rational(0)) {}
  Number(Rational value) : value_(std::move(value)) {}  // NOLINT(implicit)
  Number(double value) : value_(value) {}                // NOLINT(implicit)
  Number(int value) : value_(Rational(value)) {}         // NOLINT(implicit)

  bool is_exact() const { return std::holds_alternative<Rational>(value_); }

  /// Throws Error(UnsupportedFamily) when the value is a double.
  const Rational& exact() const;
  double to_double() const;
  int sign() const;

  std::string to_string() const;

  friend Number operator+(const Number& a, const Number& b);
  friend Number operator-(const Number& a, const Number& b);
  friend Number operator*(const Number& a, const Number& b);
  friend Number operator/(const Number& a, const Number& b);
  Number operator-() const;

  Number& operator+=(const Number& other) { return *this = *this + other; }
  Number& operator-=(const Number& other) { return *this = *this - other; }

 private:
  std::variant<Rational, double> value_;
};

}  // namespace dualrisk
