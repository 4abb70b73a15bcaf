#pragma once

#include "fmmt/common.hpp"

namespace fmmt {

// Order-selection (Eubank-Hart) one-sample lack-of-fit test.
struct EhResult {
  double statistic = 0.0;       // max_m m^{-1} sum_{j<=m} n phi_j^2 / sigma^2
  double critical_value = 0.0;  // c_alpha
  bool reject = false;          // statistic > critical_value
  double sigma2_rice = 0.0;
  int selected_order = 0;       // argmax m of the normalized cumulative sum
};

// sum_{i=1}^{n-1} (y_{i+1} - y_i)^2 / (2 (n - 1)); `y` must already be ordered by x.
double rice_variance(const Vector& y_sorted);

// Solves 1 - exp(-sum_{j>=1} P(chi2_j > j c) / j) = alpha for c by bisection.
double eh_critical_value(double alpha);

// Residuals r_i = y_i - null_fn(x_i) against the half-cosine basis
// sqrt(2) cos(pi j x), j = 1..n-1, on [0, 1]. The noise variance is the Rice
// estimate from the residuals ordered by x.
EhResult eh_test(const Vector& x, const Vector& y, const std::function<double(double)>& null_fn, double alpha);

// Same with a precomputed critical value (Monte Carlo loops).
EhResult eh_test_with_critical(const Vector& x, const Vector& y, const std::function<double(double)>& null_fn,
                               double critical_value);

}  // namespace fmmt
