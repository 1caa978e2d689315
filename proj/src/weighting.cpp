#include "dualrisk/weighting.hpp"

#include <cmath>
#include <map>
#include <sstream>

#include "dualrisk/error.hpp"

namespace dualrisk {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

bool is_integer(const Rational& r) { return r.get_den() == 1; }

Rational binomial(unsigned n, unsigned k) {
  mpz_class out;
  mpz_bin_uiui(out.get_mpz_t(), n, k);
  return Rational(out);
}

Polynomial one_minus_p_pow(unsigned m) {
  Polynomial base({Rational(1), Rational(-1)});
  Polynomial out = Polynomial::constant(1);
  for (unsigned i = 0; i < m; ++i) out = out * base;
  return out;
}

void check_unit(const Rational& p) {
  if (p < 0 || p > 1) throw Error(ErrorCode::DomainError, "probability " + to_string(p) + " outside [0,1]");
}

void check_unit(double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw Error(ErrorCode::DomainError, "probability " + format_decimal(p) + " outside [0,1]");
}

Rational interpolate(const std::vector<std::pair<Rational, Rational>>& knots, const Rational& p) {
  for (std::size_t i = 1; i < knots.size(); ++i) {
    const auto& [x0, y0] = knots[i - 1];
    const auto& [x1, y1] = knots[i];
    if (p <= x1) return y0 + (y1 - y0) * (p - x0) / (x1 - x0);
  }
  return knots.back().second;
}

double interpolate(const std::vector<std::pair<Rational, Rational>>& knots, double p) {
  for (std::size_t i = 1; i < knots.size(); ++i) {
    double x0 = knots[i - 1].first.get_d(), y0 = knots[i - 1].second.get_d();
    double x1 = knots[i].first.get_d(), y1 = knots[i].second.get_d();
    if (p <= x1) return y0 + (y1 - y0) * (p - x0) / (x1 - x0);
  }
  return knots.back().second.get_d();
}

double tk_value(double gamma, double p) {
  if (p <= 0.0) return 0.0;
  if (p >= 1.0) return 1.0;
  double a = std::pow(p, gamma);
  double b = std::pow(1.0 - p, gamma);
  return a / std::pow(a + b, 1.0 / gamma);
}

double prelec_value(double a, double b, double p) {
  if (p <= 0.0) return 0.0;
  if (p >= 1.0) return 1.0;
  return std::exp(-b * std::pow(-std::log(p), a));
}

void check_monotone_on_grid(const WeightingSpec& w, const char* name) {
  constexpr int kGrid = 2048;
  double prev = 0.0;
  for (int i = 1; i <= kGrid; ++i) {
    double v = w.eval(static_cast<double>(i) / kGrid);
    if (v < prev - 1e-15)
      throw Error(ErrorCode::InvalidWeighting, std::string(name) + " parameters give a decreasing h");
    prev = v;
  }
}

}  // namespace

WeightingSpec WeightingSpec::identity() { return WeightingSpec(family::Identity{}); }

WeightingSpec WeightingSpec::quadratic(const Rational& beta) {
  if (beta < 0 || beta > 1) throw Error(ErrorCode::InvalidWeighting, "quadratic beta must lie in [0,1]");
  return WeightingSpec(family::Quadratic{beta});
}

WeightingSpec WeightingSpec::power(const Rational& k) {
  if (k <= 0) throw Error(ErrorCode::InvalidWeighting, "power exponent must be positive");
  return WeightingSpec(family::Power{k});
}

WeightingSpec WeightingSpec::dual_power(unsigned m) {
  if (m == 0) throw Error(ErrorCode::InvalidWeighting, "dual power order must be >= 1");
  return WeightingSpec(family::DualPower{m});
}

WeightingSpec WeightingSpec::tversky_kahneman(double gamma) {
  if (!(gamma > 0.0) || !std::isfinite(gamma))
    throw Error(ErrorCode::InvalidWeighting, "tk gamma must be positive");
  WeightingSpec w(family::TverskyKahneman{gamma});
  check_monotone_on_grid(w, "tk");
  return w;
}

WeightingSpec WeightingSpec::prelec(double a, double b) {
  if (!(a > 0.0) || !(b > 0.0) || !std::isfinite(a) || !std::isfinite(b))
    throw Error(ErrorCode::InvalidWeighting, "prelec a and b must be positive");
  return WeightingSpec(family::Prelec{a, b});
}

WeightingSpec WeightingSpec::tabulated(std::vector<std::pair<Rational, Rational>> knots) {
  if (knots.size() < 2) throw Error(ErrorCode::InvalidWeighting, "tabulated h needs at least two knots");
  if (knots.front() != std::pair<Rational, Rational>(0, 0) || knots.back() != std::pair<Rational, Rational>(1, 1))
    throw Error(ErrorCode::InvalidWeighting, "tabulated h must start at (0,0) and end at (1,1)");
  for (std::size_t i = 1; i < knots.size(); ++i) {
    if (knots[i].first <= knots[i - 1].first)
      throw Error(ErrorCode::InvalidWeighting, "tabulated knots must be strictly increasing in p");
    if (knots[i].second < knots[i - 1].second)
      throw Error(ErrorCode::InvalidWeighting, "tabulated h must be non-decreasing");
  }
  return WeightingSpec(family::Tabulated{std::move(knots)});
}

WeightingSpec WeightingSpec::polynomial(const Polynomial& h) {
  if (h(Rational(0)) != 0 || h(Rational(1)) != 1)
    throw Error(ErrorCode::InvalidWeighting, "polynomial h must satisfy h(0)=0 and h(1)=1");
  if (scan_sign(h.derivative(), 0, 1).has_negative())
    throw Error(ErrorCode::InvalidWeighting, "polynomial h must be non-decreasing on [0,1]");
  return WeightingSpec(family::PolynomialH{h});
}

WeightingSpec WeightingSpec::beta_cdf(unsigned a, unsigned b) {
  if (a == 0 || b == 0) throw Error(ErrorCode::InvalidWeighting, "beta cdf needs a, b >= 1");
  const unsigned n = a + b - 1;
  Polynomial h;
  for (unsigned j = a; j <= n; ++j)
    h = h + binomial(n, j) * (Polynomial::monomial(1, j) * one_minus_p_pow(n - j));
  return polynomial(h);
}

bool WeightingSpec::is_exact() const {
  return std::visit(overloaded{
                        [](const family::Power& f) { return is_integer(f.k); },
                        [](const family::TverskyKahneman&) { return false; },
                        [](const family::Prelec&) { return false; },
                        [](const auto&) { return true; },
                    },
                    family_);
}

std::optional<Polynomial> WeightingSpec::as_polynomial() const {
  return std::visit(
      overloaded{
          [](const family::Identity&) -> std::optional<Polynomial> { return Polynomial({0, 1}); },
          [](const family::Quadratic& f) -> std::optional<Polynomial> {
            return Polynomial({Rational(0), Rational(1 + f.beta), Rational(-f.beta)});
          },
          [](const family::Power& f) -> std::optional<Polynomial> {
            if (!is_integer(f.k)) return std::nullopt;
            return Polynomial::monomial(1, static_cast<unsigned>(f.k.get_num().get_ui()));
          },
          [](const family::DualPower& f) -> std::optional<Polynomial> {
            return Polynomial::constant(1) - one_minus_p_pow(f.m);
          },
          [](const family::PolynomialH& f) -> std::optional<Polynomial> { return f.h; },
          [](const auto&) -> std::optional<Polynomial> { return std::nullopt; },
      },
      family_);
}

Number WeightingSpec::eval(const Rational& p) const {
  check_unit(p);
  if (auto poly = as_polynomial()) return Number((*poly)(p));
  if (const auto* t = std::get_if<family::Tabulated>(&family_)) return Number(interpolate(t->knots, p));
  return Number(eval(p.get_d()));
}

double WeightingSpec::eval(double p) const {
  check_unit(p);
  return std::visit(overloaded{
                        [&](const family::Identity&) { return p; },
                        [&](const family::Quadratic& f) {
                          double b = f.beta.get_d();
                          return (1.0 + b) * p - b * p * p;
                        },
                        [&](const family::Power& f) { return std::pow(p, f.k.get_d()); },
                        [&](const family::DualPower& f) { return 1.0 - std::pow(1.0 - p, f.m); },
                        [&](const family::TverskyKahneman& f) { return tk_value(f.gamma, p); },
                        [&](const family::Prelec& f) { return prelec_value(f.a, f.b, p); },
                        [&](const family::Tabulated& f) { return interpolate(f.knots, p); },
                        [&](const family::PolynomialH& f) { return f.h(p); },
                    },
                    family_);
}

Number WeightingSpec::eval_dual(const Rational& p) const {
  check_unit(p);
  return Number(1) - eval(Rational(1 - p));
}

double WeightingSpec::eval_dual(double p) const {
  check_unit(p);
  return 1.0 - eval(1.0 - p);
}

double WeightingSpec::derivative(double p) const {
  check_unit(p);
  if (auto poly = as_polynomial()) return poly->derivative()(p);
  return std::visit(overloaded{
                        [&](const family::Power& f) {
                          double k = f.k.get_d();
                          return k * std::pow(p, k - 1.0);
                        },
                        [&](const family::TverskyKahneman& f) {
                          double g = f.gamma;
                          double d = std::pow(p, g) + std::pow(1.0 - p, g);
                          double log_slope = g / p - (std::pow(p, g - 1.0) - std::pow(1.0 - p, g - 1.0)) / d;
                          return tk_value(g, p) * log_slope;
                        },
                        [&](const family::Prelec& f) {
                          double l = -std::log(p);
                          return prelec_value(f.a, f.b, p) * f.a * f.b * std::pow(l, f.a - 1.0) / p;
                        },
                        [&](const auto&) {
                          constexpr double s = 1e-6;
                          double lo = std::max(0.0, p - s), hi = std::min(1.0, p + s);
                          return (eval(hi) - eval(lo)) / (hi - lo);
                        },
                    },
                    family_);
}

std::optional<Rational> WeightingSpec::derivative_exact(const Rational& p) const {
  check_unit(p);
  if (auto poly = as_polynomial()) return poly->derivative()(p);
  return std::nullopt;
}

std::string WeightingSpec::to_string() const {
  return std::visit(overloaded{
                        [](const family::Identity&) { return std::string("identity"); },
                        [](const family::Quadratic& f) { return "quadratic:beta=" + dualrisk::to_string(f.beta); },
                        [](const family::Power& f) { return "power:k=" + dualrisk::to_string(f.k); },
                        [](const family::DualPower& f) { return "dualpower:m=" + std::to_string(f.m); },
                        [](const family::TverskyKahneman& f) { return "tk:gamma=" + format_decimal(f.gamma, 17); },
                        [](const family::Prelec& f) {
                          return "prelec:a=" + format_decimal(f.a, 17) + ",b=" + format_decimal(f.b, 17);
                        },
                        [](const family::Tabulated& f) {
                          std::string out = "tabulated:";
                          for (std::size_t i = 0; i < f.knots.size(); ++i) {
                            if (i) out += "|";
                            out += dualrisk::to_string(f.knots[i].first) + ":" + dualrisk::to_string(f.knots[i].second);
                          }
                          return out;
                        },
                        [](const family::PolynomialH& f) {
                          std::string out = "poly:";
                          for (std::size_t i = 0; i < f.h.coeffs().size(); ++i) {
                            if (i) out += ",";
                            out += dualrisk::to_string(f.h.coeffs()[i]);
                          }
                          return out;
                        },
                    },
                    family_);
}

namespace {

std::vector<std::string> split(std::string_view text, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : text) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

std::map<std::string, std::string> parse_params(const std::string& body, const std::string& whole) {
  std::map<std::string, std::string> out;
  if (body.empty()) return out;
  for (const auto& item : split(body, ',')) {
    auto eq = item.find('=');
    if (eq == std::string::npos) throw Error(ErrorCode::ParseError, "expected key=value in '" + whole + "'");
    out[item.substr(0, eq)] = item.substr(eq + 1);
  }
  return out;
}

const std::string& require(const std::map<std::string, std::string>& params, const std::string& key,
                           const std::string& whole) {
  auto it = params.find(key);
  if (it == params.end()) throw Error(ErrorCode::ParseError, "missing '" + key + "' in '" + whole + "'");
  return it->second;
}

double parse_real(const std::string& text, const std::string& whole) {
  try {
    std::size_t used = 0;
    double v = std::stod(text, &used);
    if (used != text.size()) throw std::invalid_argument(text);
    return v;
  } catch (const std::exception&) {
    throw Error(ErrorCode::ParseError, "bad real '" + text + "' in '" + whole + "'");
  }
}

unsigned parse_count(const std::string& text, const std::string& whole) {
  Rational r = parse_rational(text);
  if (!is_integer(r) || r <= 0) throw Error(ErrorCode::ParseError, "expected a positive integer in '" + whole + "'");
  return static_cast<unsigned>(r.get_num().get_ui());
}

}  // namespace

WeightingSpec parse_weighting(std::string_view text) {
  const std::string whole(text);
  const auto colon = whole.find(':');
  const std::string name = whole.substr(0, colon);
  const std::string body = colon == std::string::npos ? "" : whole.substr(colon + 1);

  if (name == "identity") return WeightingSpec::identity();
  if (name == "tabulated") {
    std::vector<std::pair<Rational, Rational>> knots;
    for (const auto& item : split(body, '|')) {
      auto parts = split(item, ':');
      if (parts.size() != 2) throw Error(ErrorCode::ParseError, "tabulated knots are 'p:h' separated by '|'");
      knots.emplace_back(parse_rational(parts[0]), parse_rational(parts[1]));
    }
    return WeightingSpec::tabulated(std::move(knots));
  }
  if (name == "poly") {
    std::vector<Rational> coeffs;
    for (const auto& c : split(body, ',')) coeffs.push_back(parse_rational(c));
    return WeightingSpec::polynomial(Polynomial(std::move(coeffs)));
  }

  const auto params = parse_params(body, whole);
  if (name == "quadratic") return WeightingSpec::quadratic(parse_rational(require(params, "beta", whole)));
  if (name == "power") return WeightingSpec::power(parse_rational(require(params, "k", whole)));
  if (name == "dualpower") return WeightingSpec::dual_power(parse_count(require(params, "m", whole), whole));
  if (name == "tk") return WeightingSpec::tversky_kahneman(parse_real(require(params, "gamma", whole), whole));
  if (name == "prelec")
    return WeightingSpec::prelec(parse_real(require(params, "a", whole), whole),
                                 parse_real(require(params, "b", whole), whole));
  if (name == "beta")
    return WeightingSpec::beta_cdf(parse_count(require(params, "a", whole), whole),
                                   parse_count(require(params, "b", whole), whole));
  throw Error(ErrorCode::ParseError, "unknown weighting family '" + name + "'");
}

WeightingSpec tabulate(const WeightingSpec& w, unsigned grid) {
  if (!w.is_exact()) throw Error(ErrorCode::UnsupportedFamily, "only exact families can be tabulated exactly");
  if (grid == 0) throw Error(ErrorCode::DomainError, "grid must be positive");
  std::vector<std::pair<Rational, Rational>> knots;
  for (unsigned i = 0; i <= grid; ++i) {
    const Rational p = fraction(i, grid);
    knots.emplace_back(p, w.eval(p).exact());
  }
  return WeightingSpec::tabulated(std::move(knots));
}

WeightingSpec tabulated_dual(const WeightingSpec& w) {
  const auto* t = std::get_if<family::Tabulated>(&w.family());
  if (!t) throw Error(ErrorCode::UnsupportedFamily, "tabulated_dual needs a tabulated spec");
  std::vector<std::pair<Rational, Rational>> knots;
  for (auto it = t->knots.rbegin(); it != t->knots.rend(); ++it)
    knots.emplace_back(Rational(1 - it->first), Rational(1 - it->second));
  return WeightingSpec::tabulated(std::move(knots));
}

std::string_view to_string(SignKind kind) {
  switch (kind) {
    case SignKind::Zero: return "Zero";
    case SignKind::NonNegative: return "NonNegative";
    case SignKind::NonPositive: return "NonPositive";
    case SignKind::Mixed: return "Mixed";
  }
  return "?";
}

namespace {

SignKind classify(bool positive, bool negative) {
  if (positive && negative) return SignKind::Mixed;
  if (positive) return SignKind::NonNegative;
  if (negative) return SignKind::NonPositive;
  return SignKind::Zero;
}

}  // namespace

Number forward_difference(const WeightingSpec& w, unsigned m, const Rational& start, const Rational& step) {
  Number acc(0);
  for (unsigned k = 0; k <= m; ++k) {
    Rational c = binomial(m, k);
    if ((m - k) % 2) c = -c;
    acc += Number(c) * w.eval(Rational(start + step * k));
  }
  return acc;
}

SignCertificate finite_difference_sign(const WeightingSpec& w, unsigned m, unsigned grid_count) {
  if (m == 0) throw Error(ErrorCode::DomainError, "difference order must be >= 1");
  if (grid_count < m + 1) throw Error(ErrorCode::DomainError, "grid_count must be at least m + 1");

  std::vector<Rational> coeff(m + 1);
  for (unsigned k = 0; k <= m; ++k) {
    coeff[k] = binomial(m, k);
    if ((m - k) % 2) coeff[k] = -coeff[k];
  }

  SignCertificate cert;
  auto note = [&](unsigned a, unsigned b, const Number& v, int s) {
    auto& slot = s > 0 ? cert.positive : cert.negative;
    if (!slot) slot = SignWitness{fraction(a, grid_count), fraction(b, grid_count), v};
  };

  if (w.is_exact()) {
    std::vector<Rational> h(grid_count + 1);
    for (unsigned i = 0; i <= grid_count; ++i) h[i] = w.eval(fraction(i, grid_count)).exact();
    for (unsigned a = 0; a + m <= grid_count; ++a) {
      for (unsigned b = 1; a + m * b <= grid_count; ++b) {
        Rational v = 0;
        for (unsigned k = 0; k <= m; ++k) v += coeff[k] * h[a + k * b];
        if (int s = sgn(v)) note(a, b, Number(v), s);
      }
      if (cert.positive && cert.negative) break;
    }
  } else {
    constexpr double kZeroTol = 1e-13;
    std::vector<double> h(grid_count + 1);
    for (unsigned i = 0; i <= grid_count; ++i) h[i] = w.eval(static_cast<double>(i) / grid_count);
    std::vector<double> c(m + 1);
    for (unsigned k = 0; k <= m; ++k) c[k] = coeff[k].get_d();
    for (unsigned a = 0; a + m <= grid_count; ++a) {
      for (unsigned b = 1; a + m * b <= grid_count; ++b) {
        double v = 0.0;
        for (unsigned k = 0; k <= m; ++k) v += c[k] * h[a + k * b];
        if (std::abs(v) > kZeroTol) note(a, b, Number(v), v > 0 ? 1 : -1);
      }
      if (cert.positive && cert.negative) break;
    }
  }
  cert.kind = classify(cert.positive.has_value(), cert.negative.has_value());
  return cert;
}

SignCertificate analytic_derivative_sign(const WeightingSpec& w, unsigned m) {
  auto poly = w.as_polynomial();
  if (!poly) throw Error(ErrorCode::UnsupportedFamily, "analytic derivative signs need a polynomial family");
  Polynomial d = *poly;
  for (unsigned i = 0; i < m; ++i) d = d.derivative();
  SignCertificate cert;
  if (d.is_zero()) return cert;
  SignScan scan = scan_sign(d, 0, 1, /*closed=*/false);
  if (scan.positive_at) cert.positive = SignWitness{*scan.positive_at, 0, Number(d(*scan.positive_at))};
  if (scan.negative_at) cert.negative = SignWitness{*scan.negative_at, 0, Number(d(*scan.negative_at))};
  cert.kind = classify(scan.has_positive(), scan.has_negative());
  return cert;
}

}  // namespace dualrisk
