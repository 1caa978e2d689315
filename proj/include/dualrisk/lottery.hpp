#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "dualrisk/rational.hpp"

namespace dualrisk {

struct State {
  Rational outcome;
  Rational probability;

  friend bool operator==(const State&, const State&) = default;
};

/// Finite-outcome lottery with exact entries. States are sorted by outcome;
/// equal adjacent outcomes are kept as distinct states (squeezes act on
/// states, not on the distribution). Immutable after construction.
class Lottery {
 public:
  /// Validates and stably sorts `states` by outcome.
  /// Throws NonPositiveProbability, NegativeOutcome or NonUnitMass.
  static Lottery make(std::vector<State> states);
  static Lottery point_mass(const Rational& outcome);

  const std::vector<State>& states() const { return states_; }
  std::size_t size() const { return states_.size(); }
  const Rational& min_outcome() const { return states_.front().outcome; }
  const Rational& max_outcome() const { return states_.back().outcome; }

  friend bool operator==(const Lottery&, const Lottery&) = default;

 private:
  explicit Lottery(std::vector<State> states) : states_(std::move(states)) {}
  std::vector<State> states_;
};

/// n states of probability exactly 1/n each; outcomes non-decreasing and
/// non-negative. The state grid that squeezes and blocks act on.
class EqualProbLottery {
 public:
  /// Throws UnsortedOutcomes, NegativeOutcome or DomainError (empty).
  static EqualProbLottery make(std::vector<Rational> outcomes);

  /// Splits every state of `lottery` into 1/n units; nullopt when some
  /// probability is not a multiple of 1/n.
  static std::optional<EqualProbLottery> from_lottery(const Lottery& lottery, std::size_t n);

  std::size_t size() const { return outcomes_.size(); }
  const std::vector<Rational>& outcomes() const { return outcomes_; }
  const Rational& operator[](std::size_t i) const { return outcomes_[i]; }
  Lottery to_lottery() const;

  friend bool operator==(const EqualProbLottery&, const EqualProbLottery&) = default;

 private:
  explicit EqualProbLottery(std::vector<Rational> outcomes) : outcomes_(std::move(outcomes)) {}
  std::vector<Rational> outcomes_;
};

/// P[L <= x].
Rational cdf(const Lottery& lottery, const Rational& x);
/// P[L > x].
Rational survival(const Lottery& lottery, const Rational& x);
/// Smallest outcome x with cdf(x) >= q, for 0 < q <= 1.
Rational quantile(const Lottery& lottery, const Rational& q);

/// Merges adjacent states with identical outcomes.
Lottery canonical_distribution(const Lottery& lottery);
bool same_distribution(const Lottery& a, const Lottery& b);

/// a + b * L for a, b >= 0.
Lottery affine(const Lottery& lottery, const Rational& a, const Rational& b);

/// `[x1,p1; x2,p2; ...]`.
std::string to_string(const Lottery& lottery);
/// `[x1;x2;...]` (equal probabilities implied).
std::string to_string(const EqualProbLottery& lottery);

}  // namespace dualrisk
