#pragma once

#include <vector>

#include "fmmt/common.hpp"

namespace fmmt {

// Isotropic Matern covariance parameters. Smoothness nu and length scale theta
// are both strictly positive; construction throws DomainError otherwise.
class MaternParams {
 public:
  MaternParams(double nu, double theta);

  double nu() const { return nu_; }
  double theta() const { return theta_; }

  // Number p when nu = p + 1/2 (p <= 20), else -1.
  int half_integer_order() const { return half_order_; }

  // Half-integer case: K = exp(-z) * sum_k poly[k] z^k. Empty otherwise.
  const std::vector<double>& half_integer_poly() const { return poly_; }

  friend bool operator==(const MaternParams&, const MaternParams&) = default;

 private:
  double nu_;
  double theta_;
  int half_order_;
  std::vector<double> poly_;
};

// K(r) = 2^{1-nu}/Gamma(nu) * z^nu * K_nu(z), z = sqrt(2 nu) r / theta, K(0) = 1.
// Half-integer nu takes the polynomial-times-exponential closed form; other nu
// go through the modified Bessel function of the second kind.
double matern_eval(double r, const MaternParams& params);

// Euclidean distance between two points of equal dimension.
double distance(PointView a, PointView b);

// Gram / cross-kernel matrix, entry (i, j) = K(|a_i - b_j|). OpenMP-parallel over rows.
Matrix kernel_matrix(const Points& a, const Points& b, const MaternParams& params);

// Row-blocked, vectorized variant (OpenMP over blocks). Agrees with
// kernel_matrix to rounding (about 1e-15 relative).
Matrix kernel_matrix_blocked(const Points& a, const Points& b, const MaternParams& params);

// K(a, b) w without forming the full matrix.
Vector kernel_apply(const Points& a, const Points& b, const Vector& w, const MaternParams& params);

// Single-threaded reference of kernel_matrix. Same arithmetic, same results.
Matrix kernel_matrix_serial(const Points& a, const Points& b, const MaternParams& params);

}  // namespace fmmt
