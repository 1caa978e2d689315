#pragma once

#include <cstdint>
#include <utility>
#include <variant>
#include <vector>

#include "dualrisk/lottery.hpp"
#include "dualrisk/weighting.hpp"

namespace dualrisk {

namespace utility {
struct Linear {};
/// u(x) = x - c x^2.
struct Quadratic { Rational c; };
/// u(x) = x^k.
struct PowerInt { unsigned k; };
/// Piecewise-linear through the knots; outcomes must lie inside the knot range.
struct Tabulated { std::vector<std::pair<Rational, Rational>> knots; };
}  // namespace utility

class UtilityFunction {
 public:
  using Family = std::variant<utility::Linear, utility::Quadratic, utility::PowerInt, utility::Tabulated>;

  static UtilityFunction linear() { return UtilityFunction(utility::Linear{}); }
  static UtilityFunction quadratic(const Rational& c) { return UtilityFunction(utility::Quadratic{c}); }
  static UtilityFunction power(unsigned k);
  /// Knots strictly increasing in x.
  static UtilityFunction tabulated(std::vector<std::pair<Rational, Rational>> knots);

  const Family& family() const { return family_; }
  Rational operator()(const Rational& x) const;

  /// Throws NonMonotoneUtility unless u is non-decreasing on [lo, hi].
  void require_monotone_on(const Rational& lo, const Rational& hi) const;

  std::string to_string() const;

 private:
  explicit UtilityFunction(Family f) : family_(std::move(f)) {}
  Family family_;
};

/// Parses `linear`, `quadratic:c=1/16`, `power:k=2`, `tabulated:0:0|2:2|10:3`.
UtilityFunction parse_utility(std::string_view text);

/// Dual-theory value V = sum_i x_i (h(F_i) - h(F_{i-1})) over the canonical
/// distribution. Exact when `w` is exact.
Number dt_value(const Lottery& lottery, const WeightingSpec& w);
/// The same value as sum_i hbar(S(x_{i-1})) (x_i - x_{i-1}) with x_0 = 0.
Number dt_value_survival(const Lottery& lottery, const WeightingSpec& w);

/// A lottery with floating outcomes and probabilities (effort-dependent
/// problems where p(e) is transcendental). Outcomes need not be sorted.
struct RealState {
  double outcome;
  double probability;
};
double dt_value(std::vector<RealState> states, const WeightingSpec& w);

/// sum_i p_i u(x_i). Throws NonMonotoneUtility if u decreases on the support.
Rational eu_value(const Lottery& lottery, const UtilityFunction& u);

Rational mean(const Lottery& lottery);
/// k = 1: the mean; k >= 2: the k-th central moment E[(X - mu)^k].
Rational primal_moment(const Lottery& lottery, unsigned k);
/// E[X^k].
Rational raw_moment(const Lottery& lottery, unsigned k);
/// E[min(X_1, ..., X_m)] for i.i.d. copies = sum_i S(x_{i-1})^m (x_i - x_{i-1}).
Rational dual_moment(const Lottery& lottery, unsigned m);

struct MonteCarloEstimate {
  double estimate;
  double std_error;
};
/// Sample mean of min(X_1..X_m) over `draws` draws from a mt19937_64 seeded
/// with `seed`.
MonteCarloEstimate dual_moment_mc_oracle(const Lottery& lottery, unsigned m, std::uint64_t draws, std::uint64_t seed);

}  // namespace dualrisk
