#pragma once

#include <optional>
#include <vector>

#include "dualrisk/rational.hpp"

namespace dualrisk {

/// Dense univariate polynomial with rational coefficients; `coeffs()[i]` is
/// the coefficient of t^i. Trailing zeros are trimmed, so the zero polynomial
/// has no coefficients and degree -1.
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::vector<Rational> coeffs);
  static Polynomial constant(const Rational& c);
  static Polynomial monomial(const Rational& c, unsigned degree);

  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.empty(); }
  const std::vector<Rational>& coeffs() const { return coeffs_; }
  Rational coeff(std::size_t i) const { return i < coeffs_.size() ? coeffs_[i] : Rational(0); }
  const Rational& leading() const { return coeffs_.back(); }

  Rational operator()(const Rational& t) const;
  double operator()(double t) const;

  Polynomial derivative() const;
  /// Antiderivative vanishing at t = 0.
  Polynomial antiderivative() const;
  /// q(t) = p(t + a).
  Polynomial shifted(const Rational& a) const;

  friend Polynomial operator+(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator-(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(const Rational& c, const Polynomial& p);
  friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.coeffs_ == b.coeffs_; }

  /// Euclidean division; throws on a zero divisor.
  static std::pair<Polynomial, Polynomial> divmod(const Polynomial& a, const Polynomial& b);
  /// Monic gcd (zero when both are zero).
  static Polynomial gcd(Polynomial a, Polynomial b);

 private:
  void trim();
  std::vector<Rational> coeffs_;
};

/// Outcome of an exact sign analysis of a polynomial over an interval.
/// Witness points are rationals where the stated strict sign is attained.
struct SignScan {
  std::optional<Rational> positive_at;
  std::optional<Rational> negative_at;

  bool has_positive() const { return positive_at.has_value(); }
  bool has_negative() const { return negative_at.has_value(); }
};

/// Decides exactly where p is positive / negative on [lo, hi] (or (lo, hi)
/// when `closed` is false). Uses a Sturm chain of the square-free part to
/// isolate roots, then one-sided Taylor signs on each root-free stretch.
SignScan scan_sign(const Polynomial& p, const Rational& lo, const Rational& hi, bool closed = true);

/// Number of distinct real roots in the half-open interval (lo, hi].
int count_roots(const Polynomial& p, const Rational& lo, const Rational& hi);

}  // namespace dualrisk
