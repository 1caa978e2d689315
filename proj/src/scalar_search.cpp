#include "dualrisk/scalar_search.hpp"

#include <algorithm>
#include <cmath>

#include "dualrisk/error.hpp"

namespace dualrisk {

ScalarMax golden_section_maximize(const std::function<double(double)>& f, double a, double b, double tol) {
  if (!(a <= b)) throw Error(ErrorCode::DomainError, "golden-section bracket must satisfy a <= b");
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = f(c), fd = f(d);
  while (b - a > tol) {
    if (fc >= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = f(d);
    }
  }
  const double x = 0.5 * (a + b);
  return {x, f(x)};
}

GridScan grid_scan(const std::function<double(double)>& f, double lo, double hi, std::size_t intervals) {
  if (intervals == 0 || !(lo <= hi)) throw Error(ErrorCode::DomainError, "grid scan needs lo <= hi and intervals >= 1");
  GridScan scan;
  scan.xs.resize(intervals + 1);
  scan.values.resize(intervals + 1);
  for (std::size_t i = 0; i <= intervals; ++i) {
    scan.xs[i] = i == intervals ? hi : lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(intervals);
    scan.values[i] = f(scan.xs[i]);
  }
  scan.best = static_cast<std::size_t>(std::max_element(scan.values.begin(), scan.values.end()) - scan.values.begin());
  return scan;
}

double max_second_difference(const GridScan& scan) {
  const auto [lo, hi] = std::minmax_element(scan.values.begin(), scan.values.end());
  const double range = std::max(*hi - *lo, 1e-300);
  double worst = -INFINITY;
  for (std::size_t i = 1; i + 1 < scan.values.size(); ++i)
    worst = std::max(worst, (scan.values[i - 1] - 2.0 * scan.values[i] + scan.values[i + 1]) / range);
  return worst;
}

double bisect_root(const std::function<double(double)>& g, double a, double b, double tol) {
  double ga = g(a);
  const double gb = g(b);
  if (ga == 0.0) return a;
  if (gb == 0.0) return b;
  if ((ga > 0) == (gb > 0)) throw Error(ErrorCode::DomainError, "bisection needs a sign change");
  while (b - a > tol) {
    const double mid = 0.5 * (a + b);
    if (mid <= a || mid >= b) break;
    const double gm = g(mid);
    if (gm == 0.0) return mid;
    if ((gm > 0) == (ga > 0)) {
      a = mid;
      ga = gm;
    } else {
      b = mid;
    }
  }
  return 0.5 * (a + b);
}

}  // namespace dualrisk
