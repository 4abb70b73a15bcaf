#include "fmmt/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <string>
#include <vector>

#include <boost/math/special_functions/gamma.hpp>

namespace fmmt {

namespace {

// sum_{j>=1} P(chi2_j > j c) / j, stopping once a term drops below 1e-12.
double tail_series(double c) {
  double s = 0.0;
  for (int j = 1; j < 100000; ++j) {
    const double term = boost::math::gamma_q(0.5 * j, 0.5 * j * c) / j;
    s += term;
    if (term < 1e-12 && j > 2) break;
  }
  return s;
}

double level_of(double c) { return -std::expm1(-tail_series(c)); }

}  // namespace

double rice_variance(const Vector& y_sorted) {
  const Eigen::Index n = y_sorted.size();
  if (n < 2) throw DomainError("rice_variance: need at least two responses");
  double s = 0.0;
  for (Eigen::Index i = 0; i + 1 < n; ++i) {
    const double d = y_sorted[i + 1] - y_sorted[i];
    s += d * d;
  }
  return s / (2.0 * static_cast<double>(n - 1));
}

double eh_critical_value(double alpha) {
  if (!(alpha > 0.0 && alpha < 0.5)) throw DomainError("eh_critical_value: alpha must lie in (0, 0.5)");
  double lo = 1.0 + 1e-9;  // the level tends to 1 as c -> 1
  double hi = 2.0;
  while (level_of(hi) > alpha) hi *= 2.0;
  while (hi - lo > 1e-7) {
    const double mid = 0.5 * (lo + hi);
    if (level_of(mid) > alpha) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

EhResult eh_test_with_critical(const Vector& x, const Vector& y, const std::function<double(double)>& null_fn,
                               double critical_value) {
  const Eigen::Index n = x.size();
  if (n < 3) throw DomainError("eh_test: need at least three observations");
  if (y.size() != n) throw DomainError("eh_test: x and y lengths differ");
  Vector r(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    if (x[i] < 0.0 || x[i] > 1.0) throw DomainError("eh_test: design point " + std::to_string(i + 1) + " outside [0, 1]");
    r[i] = y[i] - null_fn(x[i]);
  }

  EhResult out;
  out.critical_value = critical_value;
  if ((r.array() == 0.0).all()) return out;

  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  std::stable_sort(order.begin(), order.end(), [&](Eigen::Index a, Eigen::Index b) { return x[a] < x[b]; });
  Vector r_sorted(n);
  for (Eigen::Index i = 0; i < n; ++i) r_sorted[i] = r[order[static_cast<std::size_t>(i)]];
  out.sigma2_rice = rice_variance(r_sorted);
  if (!(out.sigma2_rice > 0.0)) throw NumericalError("eh_test: Rice variance estimate is zero");

  const auto nd = static_cast<double>(n);
  double cumulative = 0.0;
  double best = 0.0;
  for (Eigen::Index j = 1; j < n; ++j) {
    double phi = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) phi += r[i] * std::numbers::sqrt2 * std::cos(std::numbers::pi * j * x[i]);
    phi /= nd;
    cumulative += nd * phi * phi / out.sigma2_rice;
    const double normalized = cumulative / static_cast<double>(j);
    if (normalized > best) {
      best = normalized;
      out.selected_order = static_cast<int>(j);
    }
  }
  out.statistic = best;
  out.reject = out.statistic > critical_value;
  return out;
}

EhResult eh_test(const Vector& x, const Vector& y, const std::function<double(double)>& null_fn, double alpha) {
  return eh_test_with_critical(x, y, null_fn, eh_critical_value(alpha));
}

}  // namespace fmmt
