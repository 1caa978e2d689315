#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "dualrisk/polynomial.hpp"
#include "dualrisk/rational.hpp"

namespace dualrisk {

namespace family {
struct Identity {};
/// h(p) = (1 + beta) p - beta p^2, 0 <= beta <= 1.
struct Quadratic { Rational beta; };
/// h(p) = p^k.
struct Power { Rational k; };
/// h(p) = 1 - (1 - p)^m, i.e. hbar(p) = p^m; values the m-th dual moment.
struct DualPower { unsigned m; };
/// h(p) = p^g / (p^g + (1-p)^g)^(1/g).
struct TverskyKahneman { double gamma; };
/// h(p) = exp(-b (-ln p)^a).
struct Prelec { double a; double b; };
/// Piecewise-linear interpolation through the knots.
struct Tabulated { std::vector<std::pair<Rational, Rational>> knots; };
/// Arbitrary polynomial with h(0) = 0, h(1) = 1, h' >= 0 on [0, 1].
struct PolynomialH { Polynomial h; };
}  // namespace family

/// A probability weighting (distortion) function h applied to the CDF.
/// Validated on construction: h(0) = 0, h(1) = 1, non-decreasing.
class WeightingSpec {
 public:
  using Family = std::variant<family::Identity, family::Quadratic, family::Power, family::DualPower,
                              family::TverskyKahneman, family::Prelec, family::Tabulated, family::PolynomialH>;

  static WeightingSpec identity();
  static WeightingSpec quadratic(const Rational& beta);
  static WeightingSpec power(const Rational& k);
  static WeightingSpec dual_power(unsigned m);
  static WeightingSpec tversky_kahneman(double gamma);
  static WeightingSpec prelec(double a, double b);
  static WeightingSpec tabulated(std::vector<std::pair<Rational, Rational>> knots);
  static WeightingSpec polynomial(const Polynomial& h);
  /// Regularized incomplete beta I_p(a, b) for integers a, b >= 1: a
  /// polynomial of degree a+b-1 whose top derivative has sign (-1)^(b-1).
  static WeightingSpec beta_cdf(unsigned a, unsigned b);

  const Family& family() const { return family_; }

  /// True when eval on a rational argument returns an exact rational.
  bool is_exact() const;

  /// h(p). Throws DomainError outside [0, 1].
  Number eval(const Rational& p) const;
  double eval(double p) const;
  /// hbar(p) = 1 - h(1 - p).
  Number eval_dual(const Rational& p) const;
  double eval_dual(double p) const;

  /// h'(p); analytic for closed families, central difference (step 1e-6)
  /// for Tabulated.
  double derivative(double p) const;
  /// Exact h'(p) for polynomial families.
  std::optional<Rational> derivative_exact(const Rational& p) const;

  /// h as a polynomial (Identity, Quadratic, DualPower, integer Power,
  /// PolynomialH); nullopt otherwise.
  std::optional<Polynomial> as_polynomial() const;

  /// Canonical textual form accepted by parse_weighting.
  std::string to_string() const;

 private:
  explicit WeightingSpec(Family f) : family_(std::move(f)) {}
  Family family_;
};

/// Parses `identity`, `quadratic:beta=1/2`, `power:k=2`, `dualpower:m=3`,
/// `tk:gamma=0.61`, `prelec:a=0.65,b=1`, `tabulated:0:0|1/2:3/4|1:1`,
/// `poly:0,2,-1` (ascending coefficients) and `beta:a=2,b=2`.
WeightingSpec parse_weighting(std::string_view text);

/// Samples an exact family at i/grid, i = 0..grid, into a Tabulated spec.
WeightingSpec tabulate(const WeightingSpec& w, unsigned grid);
/// The Tabulated spec interpolating hbar at the reflected knots of `w`.
WeightingSpec tabulated_dual(const WeightingSpec& w);

enum class SignKind { Zero, NonNegative, NonPositive, Mixed };
std::string_view to_string(SignKind kind);

struct SignWitness {
  Rational start;
  Rational step;  // zero for pointwise (analytic) witnesses
  Number value;
};

struct SignCertificate {
  SignKind kind = SignKind::Zero;
  std::optional<SignWitness> positive;
  std::optional<SignWitness> negative;
};

/// m-th forward difference sum_{k=0}^m (-1)^(m-k) C(m,k) h(start + k step).
Number forward_difference(const WeightingSpec& w, unsigned m, const Rational& start, const Rational& step);

/// Signs of every m-th forward difference whose points lie on the grid
/// {0, 1/grid_count, ..., 1}. Exact for exact families; for the
/// transcendental ones, |value| <= 1e-13 counts as zero.
SignCertificate finite_difference_sign(const WeightingSpec& w, unsigned m, unsigned grid_count = 256);

/// Exact sign of h^(m) on (0, 1) for polynomial families.
/// Throws UnsupportedFamily for the others.
SignCertificate analytic_derivative_sign(const WeightingSpec& w, unsigned m);

}  // namespace dualrisk
