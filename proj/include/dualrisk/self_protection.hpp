#pragma once

#include <optional>
#include <string>
#include <vector>

#include "dualrisk/valuation.hpp"
#include "dualrisk/weighting.hpp"

namespace dualrisk {

/// Loss probability as a function of effort e.
struct EffortModel {
  enum class Kind {
    Linear,       // clamp(p0 - k e, p_min, p_max)
    Exponential,  // p0 exp(-k e)
    Hyperbolic,   // p0 (1 + k e)^(-r)
  };
  Kind kind = Kind::Exponential;
  double p0 = 0.5;
  double k = 1.0;
  double r = 1.0;      // Hyperbolic only
  double p_min = 0.0;  // Linear only
  double p_max = 1.0;  // Linear only

  double p(double e) const;
  /// dp/de (zero where the linear model is clamped).
  double dp(double e) const;
  std::string to_string() const;
};

/// Parses `linear:p0=0.7,k=0.5[,pmin=0.01,pmax=0.99]`, `exp:p0=0.6,k=2`,
/// `hyperbolic:p0=0.58,k=1.8,r=0.5`.
EffortModel parse_effort_model(std::string_view text);

struct SelfProtectionProblem {
  double w0;
  double loss;
  double epsilon;
  EffortModel model;
  double e_lo;
  double e_hi;
};

/// Throws DomainError unless bounds are finite with e_lo <= e_hi, loss >= 0,
/// epsilon >= 0, p(e) lies in (0, 1) and decreases on the effort interval.
void validate(const SelfProtectionProblem& sp);

/// Which first-order condition applies.
enum class SpCase { NoBackgroundRisk, SmallEpsilon, LargeEpsilon };
/// Throws CaseBoundary when 2 epsilon = loss with epsilon > 0.
SpCase sp_case(const SelfProtectionProblem& sp);

/// The four-state lottery (two states when epsilon = 0) at effort e.
/// Throws NegativeOutcome if w0 - loss - epsilon - e < 0.
std::vector<RealState> sp_lottery(const SelfProtectionProblem& sp, double e);

/// dt_value of sp_lottery.
double sp_value(const SelfProtectionProblem& sp, double e, const WeightingSpec& w);

/// Left-hand side of the applicable first-order condition dV/de = 0:
///   epsilon = 0:       -p' h'(p) loss - 1
///   2 epsilon < loss:  p' eps (-h'(p/2) + 2h'(p) - h'((1+p)/2)) - p' h'(p) loss - 1
///   2 epsilon > loss:  -(1/2) p' loss (h'(p/2) + h'((1+p)/2)) - 1
double sp_foc_lhs(const SelfProtectionProblem& sp, double e, const WeightingSpec& w);

struct SpSolution {
  double e_star;
  double value;
  double p_at_opt;
  double foc_at_opt;
  bool at_lower;
  bool at_upper;
  bool foc_sign_change;  // FOC changes sign around the optimum (interior)
  bool concave;          // V concave in e on the scan grid
  std::optional<std::string> warning;
};

/// 256-interval grid scan, golden-section refinement of the best bracket to
/// width < 1e-10, then (interior optima) bisection on the FOC inside that
/// bracket.
SpSolution sp_solve(const SelfProtectionProblem& sp, const WeightingSpec& w);

struct BackgroundEffect {
  SpSolution with_risk;
  SpSolution without_risk;
  int direction;                          // sign of e*_with - e*_without
  std::optional<Rational> shift_at_half;  // -h'(1/4) + 2h'(1/2) - h'(3/4), exact families
  double shift_at_half_real;
  double shift_at_opt;  // -h'(p/2) + 2h'(p) - h'((1+p)/2) at p = p(e*_without)
};

/// Solves with the problem's epsilon and with epsilon = 0.
BackgroundEffect sp_background_effect(const SelfProtectionProblem& sp, const WeightingSpec& w);

/// An effort model with p(e_c) = 1/2 and -p'(e_c) h'(1/2) loss = 1, i.e.
/// the no-background-risk FOC holds at e_c. `r` is the Hyperbolic exponent.
EffortModel calibrate_effort(EffortModel::Kind kind, const WeightingSpec& w, double loss, double e_c, double r = 0.5);

std::string to_string(SpCase c);

struct SelfProtectionConfig {
  SelfProtectionProblem problem;
  WeightingSpec weighting;
};

/// `key = value` lines, `#` comments. Keys: wealth, loss, epsilon, e_lo,
/// e_hi, weighting, effort. With `calibrate_at = e_c` the effort value names
/// only the model kind (`linear`, `exp`, `hyperbolic` or `hyperbolic:r=...`)
/// and the parameters come from calibrate_effort. Throws ParseError.
SelfProtectionConfig parse_self_protection_config(std::string_view text);

}  // namespace dualrisk
