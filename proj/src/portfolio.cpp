#include "dualrisk/portfolio.hpp"

#include <algorithm>

#include "dualrisk/dominance.hpp"
#include "dualrisk/error.hpp"

namespace dualrisk {

namespace {

Rational positive_part(const Rational& x) { return x > 0 ? x : Rational(0); }

Rational gross_payoff(const Instrument& inst, const Rational& s) {
  switch (inst.kind) {
    case Instrument::Kind::LongPut: return positive_part(inst.strike - s);
    case Instrument::Kind::ShortCall: return -positive_part(s - inst.strike);
    case Instrument::Kind::Straddle: return abs(Rational(s - inst.strike));
    case Instrument::Kind::ShortStraddle: return -abs(Rational(s - inst.strike));
    case Instrument::Kind::DigitalZeroAt: return 0;
  }
  return 0;
}

std::optional<Rational> digital_point(const std::vector<Instrument>& instruments) {
  for (const auto& inst : instruments)
    if (inst.kind == Instrument::Kind::DigitalZeroAt) return inst.strike;
  return std::nullopt;
}

Rational menu_gross(const std::vector<Instrument>& instruments, const Rational& s) {
  const auto digital = digital_point(instruments);
  Rational acc = 0;
  for (const auto& inst : instruments) {
    if (digital) {
      if (s == *digital) continue;
      if ((inst.strike < *digital) != (s < *digital)) continue;
    }
    acc += gross_payoff(inst, s);
  }
  return acc;
}

Rational mean_of(const std::vector<Rational>& xs) {
  Rational acc = 0;
  for (const auto& x : xs) acc += x;
  return acc / static_cast<long>(xs.size());
}

std::string kind_name(Instrument::Kind k) {
  switch (k) {
    case Instrument::Kind::LongPut: return "long_put";
    case Instrument::Kind::ShortCall: return "short_call";
    case Instrument::Kind::Straddle: return "straddle";
    case Instrument::Kind::ShortStraddle: return "short_straddle";
    case Instrument::Kind::DigitalZeroAt: return "digital_zero_at";
  }
  return "?";
}

}  // namespace

void validate(const PortfolioProblem& pp) {
  if (pp.w0 < 0) throw Error(ErrorCode::DomainError, "initial wealth must be >= 0");
  if (pp.S0 <= 0) throw Error(ErrorCode::DomainError, "initial stock price must be positive");
}

Rational DerivativeMenu::payoff(const Rational& s) const { return menu_gross(instruments, s) - premium; }

std::string DerivativeMenu::to_string() const {
  if (instruments.empty()) return "none";
  std::string out;
  for (std::size_t i = 0; i < instruments.size(); ++i) {
    if (i) out += "+";
    out += kind_name(instruments[i].kind) + "(" + dualrisk::to_string(instruments[i].strike) + ")";
  }
  return out + " premium " + dualrisk::to_string(premium);
}

DerivativeMenu priced_menu(std::vector<Instrument> instruments, const EqualProbLottery& stock_prices) {
  Rational total = 0;
  for (const auto& s : stock_prices.outcomes()) total += menu_gross(instruments, s);
  return DerivativeMenu{std::move(instruments), total / static_cast<long>(stock_prices.size())};
}

EqualProbLottery portfolio_prices(const EqualProbLottery& stock_prices, const DerivativeMenu& menu) {
  std::vector<Rational> out;
  out.reserve(stock_prices.size());
  for (const auto& s : stock_prices.outcomes()) {
    Rational v = s + menu.payoff(s);
    if (v < 0) throw Error(ErrorCode::NegativeOutcome, "portfolio price " + to_string(v) + " at stock price " + to_string(s));
    out.push_back(std::move(v));
  }
  std::sort(out.begin(), out.end());
  return EqualProbLottery::make(std::move(out));
}

DerivativeMenu build_menu(unsigned order, const EqualProbLottery& stock_prices,
                          const std::optional<std::vector<Rational>>& strikes) {
  using K = Instrument::Kind;
  const auto& xs = stock_prices.outcomes();
  auto strike = [&](std::size_t i, const Rational& fallback) {
    if (!strikes) return fallback;
    if (strikes->size() <= i) throw Error(ErrorCode::DomainError, "too few strikes for an order " + std::to_string(order) + " menu");
    return (*strikes)[i];
  };
  std::vector<Instrument> instruments;
  switch (order) {
    case 2: {
      Rational k = strike(0, mean_of(xs));
      instruments = {{K::LongPut, k}, {K::ShortCall, k}};
      break;
    }
    case 3:
      instruments = {{K::Straddle, strike(0, mean_of(xs))}};
      break;
    case 4: {
      Rational d = strike(0, mean_of(xs));
      std::vector<Rational> below, above;
      for (const auto& x : xs) (x < d ? below : above).push_back(x);
      std::erase(above, d);
      if (!strikes && (below.empty() || above.empty()))
        throw Error(ErrorCode::DomainError, "order 4 menu needs stock prices on both sides of the digital point");
      instruments = {{K::Straddle, strike(1, below.empty() ? d : mean_of(below))},
                     {K::ShortStraddle, strike(2, above.empty() ? d : mean_of(above))},
                     {K::DigitalZeroAt, d}};
      break;
    }
    default:
      throw Error(ErrorCode::DomainError, "menus exist for orders 2, 3 and 4 only");
  }
  DerivativeMenu menu = priced_menu(std::move(instruments), stock_prices);
  const EqualProbLottery portfolio = portfolio_prices(stock_prices, menu);
  const DominanceReport report = dual_sd_check(stock_prices.to_lottery(), portfolio.to_lottery(), order);
  if (!report.holds)
    throw Error(ErrorCode::DominanceCheckFailed, "menu " + menu.to_string() + " fails order " + std::to_string(order) +
                                                     " dual dominance: " + report.failed_condition.value_or("?"));
  return menu;
}

Number portfolio_value(const PortfolioProblem& pp, const DerivativeMenu& menu, const WeightingSpec& w) {
  validate(pp);
  const EqualProbLottery prices = menu.empty() ? pp.stock_prices : portfolio_prices(pp.stock_prices, menu);
  return (dt_value(prices.to_lottery(), w) - Number(pp.S0)) / Number(pp.S0);
}

AlphaChoice optimal_alpha(const PortfolioProblem& pp, const DerivativeMenu& menu, const WeightingSpec& w) {
  const int s = (portfolio_value(pp, menu, w) - Number(pp.r)).sign();
  if (s > 0) return {pp.w0, false};
  return {Rational(0), s == 0};
}

std::optional<EuDisagreement> find_eu_disagreement(const EqualProbLottery& stock_prices, const DerivativeMenu& menu) {
  const Lottery stock = stock_prices.to_lottery();
  const Lottery port = portfolio_prices(stock_prices, menu).to_lottery();
  const Rational top = std::max(stock.max_outcome(), port.max_outcome());

  std::vector<UtilityFunction> family;
  if (top > 0)
    for (int i = 1; i <= 8; ++i) family.push_back(UtilityFunction::quadratic(Rational(i) / (Rational(16) * top)));
  std::vector<Rational> kinks;
  for (const auto& s : stock.states()) kinks.push_back(s.outcome);
  for (const auto& s : port.states()) kinks.push_back(s.outcome);
  std::sort(kinks.begin(), kinks.end());
  kinks.erase(std::unique(kinks.begin(), kinks.end()), kinks.end());
  for (const auto& k : kinks) {
    if (k <= 0 || k >= top) continue;
    for (const Rational& slope : {Rational(1, 2), Rational(1, 8)})
      family.push_back(UtilityFunction::tabulated({{0, 0}, {k, k}, {top, k + slope * (top - k)}}));
  }

  std::optional<std::pair<UtilityFunction, Rational>> pos, neg;
  for (const auto& u : family) {
    Rational gap = eu_value(port, u) - eu_value(stock, u);
    if (gap > 0 && !pos) pos.emplace(u, gap);
    if (gap < 0 && !neg) neg.emplace(u, gap);
    if (pos && neg) return EuDisagreement{pos->first, neg->first, pos->second, neg->second};
  }
  return std::nullopt;
}

}  // namespace dualrisk
