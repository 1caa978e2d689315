#pragma once

#include <optional>
#include <string>
#include <vector>

#include "dualrisk/lottery.hpp"
#include "dualrisk/valuation.hpp"
#include "dualrisk/weighting.hpp"

namespace dualrisk {

struct PortfolioProblem {
  Rational w0;  // initial wealth
  Rational r;   // risk-free return
  Rational S0;  // initial stock price
  EqualProbLottery stock_prices;
};

/// Validates w0 >= 0 and S0 > 0.
void validate(const PortfolioProblem& pp);

struct Instrument {
  enum class Kind { LongPut, ShortCall, Straddle, ShortStraddle, DigitalZeroAt };
  Kind kind;
  Rational strike;  // the digital point for DigitalZeroAt
};

/// Derivatives bought on top of one share, financed by `premium`.
/// With a DigitalZeroAt(d) instrument present, instruments struck below d pay
/// only for prices below d, those struck above d only for prices above d, and
/// nothing pays at d itself.
struct DerivativeMenu {
  std::vector<Instrument> instruments;
  Rational premium = 0;

  bool empty() const { return instruments.empty(); }
  /// Net payoff at stock price s, premium included.
  Rational payoff(const Rational& s) const;
  std::string to_string() const;
};

/// Premium = expected gross payoff under the stock's state probabilities,
/// so the menu has exactly zero expected value.
DerivativeMenu priced_menu(std::vector<Instrument> instruments, const EqualProbLottery& stock_prices);

/// Stock price plus net menu payoff, state by state (sorted).
EqualProbLottery portfolio_prices(const EqualProbLottery& stock_prices, const DerivativeMenu& menu);

/// Menu improving the stock lottery at order 2 (collar), 3 (straddle) or 4
/// (long/short straddles around a digital zero). Default strikes: the mean for
/// orders 2 and 3; for order 4 the digital point is the mean and the long and
/// short straddles sit at the means of the states below and above it.
/// Throws DominanceCheckFailed unless the portfolio dual-dominates the stock
/// at `order`, DomainError for other orders.
DerivativeMenu build_menu(unsigned order, const EqualProbLottery& stock_prices,
                          const std::optional<std::vector<Rational>>& strikes = std::nullopt);

/// V of the return (P - S0)/S0, P the price lottery with the menu attached;
/// equals (V[P] - S0)/S0 by translation invariance and homogeneity.
Number portfolio_value(const PortfolioProblem& pp, const DerivativeMenu& menu, const WeightingSpec& w);

struct AlphaChoice {
  Rational alpha;  // 0 or w0
  bool indifferent;
};
/// Corner solution: w0 if V[return] > r, 0 if below, indifferent (alpha 0) if equal.
AlphaChoice optimal_alpha(const PortfolioProblem& pp, const DerivativeMenu& menu, const WeightingSpec& w);

/// Two increasing concave utilities ranking portfolio and stock oppositely.
struct EuDisagreement {
  UtilityFunction prefers_portfolio;
  UtilityFunction prefers_stock;
  Rational gap_portfolio;  // EU[portfolio] - EU[stock] under prefers_portfolio (> 0)
  Rational gap_stock;      // same difference under prefers_stock (< 0)
};
/// Searches quadratic utilities x - c x^2 (concave, increasing on the support)
/// and kinked piecewise-linear concave utilities for a strict disagreement.
std::optional<EuDisagreement> find_eu_disagreement(const EqualProbLottery& stock_prices, const DerivativeMenu& menu);

}  // namespace dualrisk
