#include "dualrisk/piecewise.hpp"

#include <algorithm>

#include "dualrisk/error.hpp"

namespace dualrisk {

PiecewisePoly::PiecewisePoly(std::vector<Rational> breaks, std::vector<Polynomial> pieces, bool right_continuous)
    : breaks_(std::move(breaks)), pieces_(std::move(pieces)), right_continuous_(right_continuous) {
  if (breaks_.size() < 2 || pieces_.size() + 1 != breaks_.size())
    throw Error(ErrorCode::DomainError, "piecewise polynomial needs one piece per breakpoint interval");
  for (std::size_t i = 1; i < breaks_.size(); ++i)
    if (breaks_[i] <= breaks_[i - 1]) throw Error(ErrorCode::DomainError, "breakpoints must be strictly increasing");
}

std::size_t PiecewisePoly::piece_index(const Rational& t) const {
  if (t < breaks_.front() || t > breaks_.back())
    throw Error(ErrorCode::DomainError, "argument " + to_string(t) + " outside the piecewise domain");
  if (right_continuous_) {
    auto it = std::upper_bound(breaks_.begin(), breaks_.end(), t);
    std::size_t i = static_cast<std::size_t>(it - breaks_.begin()) - 1;
    return std::min(i, pieces_.size() - 1);
  }
  auto it = std::lower_bound(breaks_.begin() + 1, breaks_.end(), t);
  return static_cast<std::size_t>(it - breaks_.begin()) - 1;
}

Rational PiecewisePoly::eval(const Rational& t) const { return pieces_[piece_index(t)](t); }

double PiecewisePoly::eval(double t) const {
  // Locate with doubles; the pieces are exact, only the argument is rounded.
  std::size_t i = 0;
  while (i + 1 < pieces_.size() && (right_continuous_ ? t >= breaks_[i + 1].get_d() : t > breaks_[i + 1].get_d()))
    ++i;
  return pieces_[i](t);
}

PiecewisePoly PiecewisePoly::integral() const {
  std::vector<Polynomial> out;
  out.reserve(pieces_.size());
  Rational acc = 0;
  for (std::size_t i = 0; i < pieces_.size(); ++i) {
    Polynomial anti = pieces_[i].antiderivative();
    Polynomial shifted = anti - Polynomial::constant(anti(breaks_[i]) - acc);
    acc = shifted(breaks_[i + 1]);
    out.push_back(std::move(shifted));
  }
  return PiecewisePoly(breaks_, std::move(out), right_continuous_);
}

PiecewisePoly PiecewisePoly::refined(const std::vector<Rational>& breaks) const {
  if (breaks.front() != breaks_.front() || breaks.back() != breaks_.back())
    throw Error(ErrorCode::DomainError, "refinement must keep the domain");
  std::vector<Polynomial> out;
  out.reserve(breaks.size() - 1);
  std::size_t src = 0;
  for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
    while (breaks_[src + 1] <= breaks[i]) ++src;
    if (breaks_[src + 1] < breaks[i + 1]) throw Error(ErrorCode::DomainError, "refinement drops a breakpoint");
    out.push_back(pieces_[src]);
  }
  return PiecewisePoly(breaks, std::move(out), right_continuous_);
}

PiecewisePoly operator-(const PiecewisePoly& a, const PiecewisePoly& b) {
  std::vector<Rational> merged;
  std::set_union(a.breaks_.begin(), a.breaks_.end(), b.breaks_.begin(), b.breaks_.end(), std::back_inserter(merged));
  merged.erase(std::unique(merged.begin(), merged.end()), merged.end());
  PiecewisePoly ra = a.refined(merged);
  PiecewisePoly rb = b.refined(merged);
  std::vector<Polynomial> out;
  out.reserve(ra.pieces_.size());
  for (std::size_t i = 0; i < ra.pieces_.size(); ++i) out.push_back(ra.pieces_[i] - rb.pieces_[i]);
  return PiecewisePoly(std::move(merged), std::move(out), a.right_continuous_);
}

std::optional<Rational> find_negative(const PiecewisePoly& f) {
  const auto& breaks = f.breaks();
  const auto& pieces = f.pieces();
  for (std::size_t i = 0; i < pieces.size(); ++i) {
    if (pieces[i](breaks[i]) < 0) return breaks[i];
    if (pieces[i](breaks[i + 1]) < 0) return breaks[i + 1];
  }
  for (std::size_t i = 0; i < pieces.size(); ++i) {
    SignScan scan = scan_sign(pieces[i], breaks[i], breaks[i + 1]);
    if (scan.negative_at) return scan.negative_at;
  }
  return std::nullopt;
}

PiecewisePoly iterated_quantile(const Lottery& lottery, unsigned m) {
  if (m == 0) throw Error(ErrorCode::DomainError, "iteration order must be >= 1");
  const Lottery canon = canonical_distribution(lottery);
  std::vector<Rational> breaks{Rational(0)};
  std::vector<Polynomial> pieces;
  Rational acc = 0;
  for (const auto& s : canon.states()) {
    acc += s.probability;
    breaks.push_back(acc);
    pieces.push_back(Polynomial::constant(s.outcome));
  }
  PiecewisePoly f(std::move(breaks), std::move(pieces));
  for (unsigned k = 1; k < m; ++k) f = f.integral();
  return f;
}

PiecewisePoly iterated_cdf(const Lottery& lottery, unsigned m, const Rational& upper) {
  if (m == 0) throw Error(ErrorCode::DomainError, "iteration order must be >= 1");
  if (upper < lottery.max_outcome() || upper <= 0)
    throw Error(ErrorCode::DomainError, "upper bound must cover the support");
  std::vector<Rational> breaks{Rational(0)};
  for (const auto& s : lottery.states())
    if (s.outcome > breaks.back() && s.outcome < upper) breaks.push_back(s.outcome);
  breaks.push_back(upper);
  std::vector<Polynomial> pieces;
  for (std::size_t i = 0; i + 1 < breaks.size(); ++i) pieces.push_back(Polynomial::constant(cdf(lottery, breaks[i])));
  PiecewisePoly f(std::move(breaks), std::move(pieces), /*right_continuous=*/true);
  for (unsigned k = 1; k < m; ++k) f = f.integral();
  return f;
}

}  // namespace dualrisk
