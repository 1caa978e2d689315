#include "dualrisk/self_protection.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

#include "dualrisk/error.hpp"
#include "dualrisk/scalar_search.hpp"

namespace dualrisk {

double EffortModel::p(double e) const {
  switch (kind) {
    case Kind::Linear: return std::clamp(p0 - k * e, p_min, p_max);
    case Kind::Exponential: return p0 * std::exp(-k * e);
    case Kind::Hyperbolic: return p0 * std::pow(1.0 + k * e, -r);
  }
  return p0;
}

double EffortModel::dp(double e) const {
  switch (kind) {
    case Kind::Linear: {
      const double raw = p0 - k * e;
      return raw <= p_min || raw >= p_max ? 0.0 : -k;
    }
    case Kind::Exponential: return -k * p(e);
    case Kind::Hyperbolic: return -r * k * p0 * std::pow(1.0 + k * e, -r - 1.0);
  }
  return 0.0;
}

std::string EffortModel::to_string() const {
  auto f = [](double v) { return format_decimal(v, 17); };
  switch (kind) {
    case Kind::Linear:
      return "linear:p0=" + f(p0) + ",k=" + f(k) + ",pmin=" + f(p_min) + ",pmax=" + f(p_max);
    case Kind::Exponential: return "exp:p0=" + f(p0) + ",k=" + f(k);
    case Kind::Hyperbolic: return "hyperbolic:p0=" + f(p0) + ",k=" + f(k) + ",r=" + f(r);
  }
  return "?";
}

EffortModel parse_effort_model(std::string_view text) {
  const std::string whole(text);
  const auto colon = whole.find(':');
  const std::string name = whole.substr(0, colon);
  std::map<std::string, double> params;
  if (colon != std::string::npos) {
    std::stringstream in(whole.substr(colon + 1));
    std::string item;
    while (std::getline(in, item, ',')) {
      const auto eq = item.find('=');
      if (eq == std::string::npos) throw Error(ErrorCode::ParseError, "expected key=value in '" + whole + "'");
      params[item.substr(0, eq)] = to_double(parse_rational(item.substr(eq + 1)));
    }
  }
  auto get = [&](const std::string& key, std::optional<double> fallback = std::nullopt) {
    auto it = params.find(key);
    if (it != params.end()) return it->second;
    if (fallback) return *fallback;
    throw Error(ErrorCode::ParseError, "missing '" + key + "' in '" + whole + "'");
  };
  EffortModel m;
  if (name == "linear") {
    m.kind = EffortModel::Kind::Linear;
    m.p_min = get("pmin", 1e-6);
    m.p_max = get("pmax", 1.0 - 1e-6);
  } else if (name == "exp") {
    m.kind = EffortModel::Kind::Exponential;
  } else if (name == "hyperbolic") {
    m.kind = EffortModel::Kind::Hyperbolic;
    m.r = get("r");
  } else {
    throw Error(ErrorCode::ParseError, "unknown effort model '" + name + "'");
  }
  m.p0 = get("p0");
  m.k = get("k");
  return m;
}

void validate(const SelfProtectionProblem& sp) {
  if (!std::isfinite(sp.e_lo) || !std::isfinite(sp.e_hi) || sp.e_lo > sp.e_hi || sp.e_lo < 0)
    throw Error(ErrorCode::DomainError, "effort bounds must be finite with 0 <= e_lo <= e_hi");
  if (!(sp.loss >= 0) || !(sp.epsilon >= 0)) throw Error(ErrorCode::DomainError, "loss and epsilon must be >= 0");
  if (!(sp.model.k > 0) || (sp.model.kind == EffortModel::Kind::Hyperbolic && !(sp.model.r > 0)))
    throw Error(ErrorCode::DomainError, "p(e) must be strictly decreasing (k > 0, r > 0)");
  for (double e : {sp.e_lo, sp.e_hi}) {
    const double p = sp.model.p(e);
    if (!(p > 0.0 && p < 1.0))
      throw Error(ErrorCode::DomainError, "p(" + format_decimal(e) + ") = " + format_decimal(p) + " is outside (0,1)");
  }
}

SpCase sp_case(const SelfProtectionProblem& sp) {
  if (sp.epsilon == 0.0) return SpCase::NoBackgroundRisk;
  if (2.0 * sp.epsilon == sp.loss)
    throw Error(ErrorCode::CaseBoundary, "2 epsilon = loss: the middle states tie and neither FOC applies");
  return 2.0 * sp.epsilon < sp.loss ? SpCase::SmallEpsilon : SpCase::LargeEpsilon;
}

std::string to_string(SpCase c) {
  switch (c) {
    case SpCase::NoBackgroundRisk: return "no_background_risk";
    case SpCase::SmallEpsilon: return "2eps<loss";
    case SpCase::LargeEpsilon: return "2eps>loss";
  }
  return "?";
}

std::vector<RealState> sp_lottery(const SelfProtectionProblem& sp, double e) {
  if (e < sp.e_lo || e > sp.e_hi) throw Error(ErrorCode::DomainError, "effort " + format_decimal(e) + " outside bounds");
  const double p = sp.model.p(e);
  const double low = sp.w0 - sp.loss - sp.epsilon - e;
  if (low < 0) throw Error(ErrorCode::NegativeOutcome, "w0 - loss - epsilon - e = " + format_decimal(low));
  std::vector<RealState> states;
  if (sp.epsilon == 0.0) {
    states = {{sp.w0 - sp.loss - e, p}, {sp.w0 - e, 1.0 - p}};
  } else {
    states = {{sp.w0 - sp.loss - sp.epsilon - e, p / 2},
              {sp.w0 - sp.loss + sp.epsilon - e, p / 2},
              {sp.w0 - sp.epsilon - e, (1.0 - p) / 2},
              {sp.w0 + sp.epsilon - e, (1.0 - p) / 2}};
  }
  std::stable_sort(states.begin(), states.end(),
                   [](const RealState& a, const RealState& b) { return a.outcome < b.outcome; });
  return states;
}

double sp_value(const SelfProtectionProblem& sp, double e, const WeightingSpec& w) {
  return dt_value(sp_lottery(sp, e), w);
}

double sp_foc_lhs(const SelfProtectionProblem& sp, double e, const WeightingSpec& w) {
  const SpCase c = sp_case(sp);
  const double p = sp.model.p(e);
  const double dp = sp.model.dp(e);
  const double l = sp.loss, eps = sp.epsilon;
  switch (c) {
    case SpCase::NoBackgroundRisk: return -dp * w.derivative(p) * l - 1.0;
    case SpCase::SmallEpsilon:
      return dp * eps * (-w.derivative(p / 2) + 2.0 * w.derivative(p) - w.derivative((1.0 + p) / 2)) -
             dp * w.derivative(p) * l - 1.0;
    case SpCase::LargeEpsilon:
      return -0.5 * dp * l * (w.derivative(p / 2) + w.derivative((1.0 + p) / 2)) - 1.0;
  }
  return 0.0;
}

SpSolution sp_solve(const SelfProtectionProblem& sp, const WeightingSpec& w) {
  validate(sp);
  auto f = [&](double e) { return sp_value(sp, e, w); };
  SpSolution sol{};
  if (sp.e_lo == sp.e_hi) {
    sol.e_star = sp.e_lo;
    sol.at_lower = sol.at_upper = true;
    sol.concave = true;
  } else {
    const GridScan scan = grid_scan(f, sp.e_lo, sp.e_hi, 256);
    sol.concave = max_second_difference(scan) <= 1e-9;
    if (!sol.concave) sol.warning = "V is not concave in e on the scan grid; returning the global grid maximum";
    const std::size_t i = scan.best;
    const double a = scan.xs[i == 0 ? 0 : i - 1];
    const double b = scan.xs[std::min(i + 1, scan.xs.size() - 1)];
    sol.e_star = golden_section_maximize(f, a, b, 1e-10).x;

    std::optional<std::function<double(double)>> foc;
    try {
      sp_case(sp);
      foc = [&](double e) { return sp_foc_lhs(sp, e, w); };
    } catch (const Error&) {
    }
    if (foc) {
      const double ga = (*foc)(a), gb = (*foc)(b);
      sol.foc_sign_change = ga > 0 && gb < 0;
      if (sol.foc_sign_change) {
        sol.e_star = bisect_root(*foc, a, b);
      } else if (i == 0 && ga <= 0) {
        sol.e_star = sp.e_lo;
      } else if (i + 1 == scan.xs.size() && gb >= 0) {
        sol.e_star = sp.e_hi;
      }
    }
    sol.at_lower = sol.e_star <= sp.e_lo + 1e-9;
    sol.at_upper = sol.e_star >= sp.e_hi - 1e-9;
  }
  sol.value = f(sol.e_star);
  sol.p_at_opt = sp.model.p(sol.e_star);
  try {
    sol.foc_at_opt = sp_foc_lhs(sp, sol.e_star, w);
  } catch (const Error&) {
    sol.foc_at_opt = NAN;
  }
  return sol;
}

BackgroundEffect sp_background_effect(const SelfProtectionProblem& sp, const WeightingSpec& w) {
  SelfProtectionProblem without = sp;
  without.epsilon = 0.0;
  BackgroundEffect out{sp_solve(sp, w), sp_solve(without, w), 0, std::nullopt, 0.0, 0.0};
  const double diff = out.with_risk.e_star - out.without_risk.e_star;
  out.direction = std::abs(diff) <= 1e-9 ? 0 : (diff > 0 ? 1 : -1);
  auto shift = [&](double p) { return -w.derivative(p / 2) + 2.0 * w.derivative(p) - w.derivative((1.0 + p) / 2); };
  out.shift_at_half_real = shift(0.5);
  if (auto a = w.derivative_exact(Rational(1, 4))) {
    out.shift_at_half = Rational(-*a + 2 * *w.derivative_exact(Rational(1, 2)) - *w.derivative_exact(Rational(3, 4)));
  }
  out.shift_at_opt = shift(out.without_risk.p_at_opt);
  return out;
}

EffortModel calibrate_effort(EffortModel::Kind kind, const WeightingSpec& w, double loss, double e_c, double r) {
  const double slope = w.derivative(0.5);
  if (!(slope > 0) || !(loss > 0)) throw Error(ErrorCode::DomainError, "calibration needs h'(1/2) > 0 and loss > 0");
  EffortModel m;
  m.kind = kind;
  switch (kind) {
    case EffortModel::Kind::Linear:
      m.k = 1.0 / (slope * loss);
      m.p0 = 0.5 + m.k * e_c;
      m.p_min = 1e-6;
      m.p_max = 1.0 - 1e-6;
      break;
    case EffortModel::Kind::Exponential:
      m.k = 2.0 / (slope * loss);
      m.p0 = 0.5 * std::exp(m.k * e_c);
      break;
    case EffortModel::Kind::Hyperbolic: {
      const double denom = r * slope * loss - 2.0 * e_c;
      if (!(denom > 0)) throw Error(ErrorCode::DomainError, "hyperbolic calibration needs r h'(1/2) loss > 2 e_c");
      m.r = r;
      m.k = 2.0 / denom;
      m.p0 = 0.5 * std::pow(1.0 + m.k * e_c, r);
      break;
    }
  }
  return m;
}

SelfProtectionConfig parse_self_protection_config(std::string_view text) {
  std::map<std::string, std::string> kv;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t line_no = 0;
  auto trim = [](std::string v) {
    const auto a = v.find_first_not_of(" \t\r");
    if (a == std::string::npos) return std::string();
    return v.substr(a, v.find_last_not_of(" \t\r") - a + 1);
  };
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw Error(ErrorCode::ParseError, "line " + std::to_string(line_no) + ": expected key = value");
    const std::string key = trim(line.substr(0, eq));
    static const std::vector<std::string> known{"wealth", "loss", "epsilon", "e_lo", "e_hi",
                                                "weighting", "effort", "calibrate_at"};
    if (std::find(known.begin(), known.end(), key) == known.end())
      throw Error(ErrorCode::ParseError, "line " + std::to_string(line_no) + ": unknown key '" + key + "'");
    kv[key] = trim(line.substr(eq + 1));
  }
  auto get = [&](const std::string& key) -> const std::string& {
    auto it = kv.find(key);
    if (it == kv.end()) throw Error(ErrorCode::ParseError, "config lacks '" + key + "'");
    return it->second;
  };
  auto number = [&](const std::string& key, double fallback) {
    return kv.count(key) ? to_double(parse_rational(kv[key])) : fallback;
  };

  const WeightingSpec w = parse_weighting(get("weighting"));
  const double wealth = to_double(parse_rational(get("wealth")));
  const double loss = to_double(parse_rational(get("loss")));
  EffortModel model;
  if (kv.count("calibrate_at")) {
    const std::string& effort = get("effort");
    const double e_c = to_double(parse_rational(kv["calibrate_at"]));
    if (effort == "linear") {
      model = calibrate_effort(EffortModel::Kind::Linear, w, loss, e_c);
    } else if (effort == "exp") {
      model = calibrate_effort(EffortModel::Kind::Exponential, w, loss, e_c);
    } else if (effort.rfind("hyperbolic", 0) == 0) {
      double r = 0.5;
      if (effort.rfind("hyperbolic:r=", 0) == 0) r = to_double(parse_rational(effort.substr(13)));
      else if (effort != "hyperbolic") throw Error(ErrorCode::ParseError, "bad effort kind '" + effort + "'");
      model = calibrate_effort(EffortModel::Kind::Hyperbolic, w, loss, e_c, r);
    } else {
      throw Error(ErrorCode::ParseError, "bad effort kind '" + effort + "'");
    }
  } else {
    model = parse_effort_model(get("effort"));
  }
  SelfProtectionProblem sp{wealth, loss, number("epsilon", 0.0), model, number("e_lo", 0.0), number("e_hi", 1.0)};
  return {sp, w};
}

}  // namespace dualrisk
