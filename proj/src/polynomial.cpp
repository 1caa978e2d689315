#include "dualrisk/polynomial.hpp"

#include <cmath>

#include "dualrisk/error.hpp"

namespace dualrisk {

Polynomial::Polynomial(std::vector<Rational> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

Polynomial Polynomial::constant(const Rational& c) { return Polynomial({c}); }

Polynomial Polynomial::monomial(const Rational& c, unsigned degree) {
  std::vector<Rational> coeffs(degree + 1, Rational(0));
  coeffs[degree] = c;
  return Polynomial(std::move(coeffs));
}

void Polynomial::trim() {
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

Rational Polynomial::operator()(const Rational& t) const {
  Rational acc = 0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * t + *it;
  return acc;
}

double Polynomial::operator()(double t) const {
  double acc = 0.0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * t + it->get_d();
  return acc;
}

Polynomial Polynomial::derivative() const {
  if (coeffs_.size() <= 1) return {};
  std::vector<Rational> d(coeffs_.size() - 1);
  for (std::size_t i = 1; i < coeffs_.size(); ++i) d[i - 1] = coeffs_[i] * static_cast<long>(i);
  return Polynomial(std::move(d));
}

Polynomial Polynomial::antiderivative() const {
  if (coeffs_.empty()) return {};
  std::vector<Rational> a(coeffs_.size() + 1, Rational(0));
  for (std::size_t i = 0; i < coeffs_.size(); ++i) a[i + 1] = coeffs_[i] / static_cast<long>(i + 1);
  return Polynomial(std::move(a));
}

Polynomial Polynomial::shifted(const Rational& a) const {
  // Horner in polynomial form: p(t + a) = (...(c_n (t+a) + c_{n-1})(t+a) + ...).
  Polynomial result;
  const Polynomial linear({a, Rational(1)});
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) result = result * linear + constant(*it);
  return result;
}

Polynomial operator+(const Polynomial& a, const Polynomial& b) {
  std::vector<Rational> c(std::max(a.coeffs_.size(), b.coeffs_.size()), Rational(0));
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i) c[i] += a.coeffs_[i];
  for (std::size_t i = 0; i < b.coeffs_.size(); ++i) c[i] += b.coeffs_[i];
  return Polynomial(std::move(c));
}

Polynomial operator-(const Polynomial& a, const Polynomial& b) { return a + Rational(-1) * b; }

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<Rational> c(a.coeffs_.size() + b.coeffs_.size() - 1, Rational(0));
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j) c[i + j] += a.coeffs_[i] * b.coeffs_[j];
  return Polynomial(std::move(c));
}

Polynomial operator*(const Rational& c, const Polynomial& p) {
  std::vector<Rational> out = p.coeffs_;
  for (auto& x : out) x *= c;
  return Polynomial(std::move(out));
}

std::pair<Polynomial, Polynomial> Polynomial::divmod(const Polynomial& a, const Polynomial& b) {
  if (b.is_zero()) throw Error(ErrorCode::DomainError, "polynomial division by zero");
  std::vector<Rational> rem = a.coeffs_;
  if (a.degree() < b.degree()) return {Polynomial(), a};
  std::vector<Rational> quot(a.coeffs_.size() - b.coeffs_.size() + 1, Rational(0));
  const int db = b.degree();
  for (int k = a.degree() - db; k >= 0; --k) {
    Rational q = rem[k + db] / b.leading();
    quot[k] = q;
    if (q == 0) continue;
    for (int i = 0; i <= db; ++i) rem[k + i] -= q * b.coeffs_[i];
  }
  return {Polynomial(std::move(quot)), Polynomial(std::move(rem))};
}

Polynomial Polynomial::gcd(Polynomial a, Polynomial b) {
  while (!b.is_zero()) {
    Polynomial r = divmod(a, b).second;
    a = std::move(b);
    b = std::move(r);
  }
  if (a.is_zero()) return a;
  return Rational(1) / a.leading() * a;
}

namespace {

class SturmChain {
 public:
  explicit SturmChain(const Polynomial& squarefree) {
    chain_.push_back(squarefree);
    chain_.push_back(squarefree.derivative());
    while (!chain_.back().is_zero()) {
      Polynomial r = Polynomial::divmod(chain_[chain_.size() - 2], chain_.back()).second;
      chain_.push_back(Rational(-1) * r);
    }
    chain_.pop_back();
  }

  // Sign variations at x; with `right_limit`, a zero of the head is replaced
  // by its one-sided sign just to the right (simple roots only).
  int variations(const Rational& x, bool right_limit) const {
    int count = 0;
    int prev = 0;
    for (std::size_t k = 0; k < chain_.size(); ++k) {
      int s = sgn(chain_[k](x));
      if (k == 0 && s == 0 && right_limit && chain_.size() > 1) s = sgn(chain_[1](x));
      if (s == 0) continue;
      if (prev != 0 && s != prev) ++count;
      prev = s;
    }
    return count;
  }

  const Polynomial& head() const { return chain_.front(); }

  // Distinct roots in the open interval (a, b).
  int roots_open(const Rational& a, const Rational& b) const {
    int n = variations(a, true) - variations(b, false);
    if (head()(b) == 0) --n;
    return n;
  }

 private:
  std::vector<Polynomial> chain_;
};

// Sign of p just to the right of x (first non-vanishing derivative).
int sign_right(const Polynomial& p, const Rational& x) {
  Polynomial d = p;
  while (!d.is_zero()) {
    int s = sgn(d(x));
    if (s != 0) return s;
    d = d.derivative();
  }
  return 0;
}

// Sign of p just to the left of x.
int sign_left(const Polynomial& p, const Rational& x) {
  Polynomial d = p;
  int parity = 1;
  while (!d.is_zero()) {
    int s = sgn(d(x));
    if (s != 0) return parity * s;
    d = d.derivative();
    parity = -parity;
  }
  return 0;
}

class Scanner {
 public:
  Scanner(const Polynomial& p, const Polynomial& squarefree) : p_(p), sturm_(squarefree) {}

  void record(const Rational& x, int s) {
    if (s > 0 && !out_.positive_at) out_.positive_at = x;
    if (s < 0 && !out_.negative_at) out_.negative_at = x;
  }

  bool done() const { return out_.positive_at && out_.negative_at; }

  // Walks from `from` toward `toward` by repeated halving until p has sign s.
  void find_point(const Rational& from, const Rational& toward, int s) {
    if (s == 0 || (s > 0 && out_.positive_at) || (s < 0 && out_.negative_at)) return;
    Rational step = (toward - from) / 2;
    for (;;) {
      Rational x = from + step;
      if (sgn(p_(x)) == s) {
        record(x, s);
        return;
      }
      step /= 2;
    }
  }

  void open_interval(const Rational& a, const Rational& b) {
    if (done()) return;
    const int roots = sturm_.roots_open(a, b);
    if (roots == 0) {
      int s = sign_right(p_, a);
      Rational mid = (a + b) / 2;
      if (sgn(p_(mid)) == s) record(mid, s);
      else find_point(a, b, s);
      return;
    }
    if (roots == 1) {
      find_point(a, b, sign_right(p_, a));
      find_point(b, a, sign_left(p_, b));
      return;
    }
    Rational mid = (a + b) / 2;
    open_interval(a, mid);
    record(mid, sgn(p_(mid)));
    open_interval(mid, b);
  }

  SignScan result() const { return out_; }

 private:
  const Polynomial& p_;
  SturmChain sturm_;
  SignScan out_;
};

Polynomial squarefree_part(const Polynomial& p) {
  Polynomial g = Polynomial::gcd(p, p.derivative());
  if (g.degree() <= 0) return p;
  return Polynomial::divmod(p, g).first;
}

}  // namespace

int count_roots(const Polynomial& p, const Rational& lo, const Rational& hi) {
  if (p.is_zero()) throw Error(ErrorCode::DomainError, "zero polynomial has infinitely many roots");
  SturmChain chain(squarefree_part(p));
  return chain.variations(lo, true) - chain.variations(hi, false);
}

SignScan scan_sign(const Polynomial& p, const Rational& lo, const Rational& hi, bool closed) {
  if (hi < lo) throw Error(ErrorCode::DomainError, "empty interval");
  if (p.is_zero()) return {};
  if (p.degree() == 0) {
    SignScan out;
    int s = sgn(p.leading());
    if (s > 0) out.positive_at = lo;
    else out.negative_at = lo;
    return out;
  }
  Scanner scanner(p, squarefree_part(p));
  if (closed) {
    scanner.record(lo, sgn(p(lo)));
    scanner.record(hi, sgn(p(hi)));
  }
  if (lo < hi) scanner.open_interval(lo, hi);
  return scanner.result();
}

}  // namespace dualrisk
