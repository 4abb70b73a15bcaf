#include "fmmt/kernel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include <boost/math/special_functions/bessel.hpp>

namespace fmmt {

namespace {

constexpr int kMaxHalfOrder = 20;

int detect_half_order(double nu) {
  const double twice = 2.0 * nu;
  const double rounded = std::round(twice);
  if (std::abs(twice - rounded) > 1e-12) return -1;
  const auto odd = static_cast<long long>(rounded);
  if (odd % 2 != 1) return -1;
  const auto p = static_cast<int>((odd - 1) / 2);
  return p <= kMaxHalfOrder ? p : -1;
}

// p!/(2p)! * sum_{i=0}^{p} (p+i)!/(i!(p-i)!) (2z)^{p-i}, as coefficients of z^k.
std::vector<double> half_integer_coefficients(int p) {
  std::vector<double> poly(static_cast<std::size_t>(p) + 1);
  // c_i multiplies (2z)^{p-i}; c_p = 1 and c_{i-1}/c_i = i / ((p + i)(p - i + 1)).
  double coef = 1.0;
  double two_pow = 1.0;
  for (int i = p; i >= 0; --i) {
    poly[static_cast<std::size_t>(p - i)] = coef * two_pow;
    if (i == 0) break;
    coef *= static_cast<double>(i) / (static_cast<double>(p + i) * (p - i + 1));
    two_pow *= 2.0;
  }
  return poly;
}

double half_integer_form(double z, const std::vector<double>& poly) {
  double sum = 0.0;
  for (auto it = poly.rbegin(); it != poly.rend(); ++it) sum = sum * z + *it;
  return std::exp(-z) * sum;
}

double general_form(double z, double nu) {
  if (z > 700.0) return 0.0;
  const double bessel = boost::math::cyl_bessel_k(nu, z);
  if (bessel == 0.0) return 0.0;
  const double log_value = (1.0 - nu) * std::log(2.0) - std::lgamma(nu) + nu * std::log(z) +
                           std::log(bessel);
  return std::min(1.0, std::exp(log_value));
}

void check_dims(const Points& a, const Points& b) {
  if (a.cols() != b.cols()) {
    throw DomainError("kernel_matrix: point dimensions differ (" + std::to_string(a.cols()) +
                      " vs " + std::to_string(b.cols()) + ")");
  }
}

// Rows [begin, begin + count) of the cross-kernel between a and b, written to
// out (count x b.rows()). The half-integer case runs on whole arrays so that
// Eigen can vectorize sqrt and exp.
void kernel_block(const Points& a, Eigen::Index begin, Eigen::Index count, const Points& b, const MaternParams& params,
                  Eigen::Ref<Matrix> out) {
  if (params.half_integer_order() < 0) {
    for (Eigen::Index i = 0; i < count; ++i) {
      for (Eigen::Index j = 0; j < b.rows(); ++j) {
        out(i, j) = matern_eval(distance(row_view(a, begin + i), row_view(b, j)), params);
      }
    }
    return;
  }
  Eigen::ArrayXXd d2 = Eigen::ArrayXXd::Zero(count, b.rows());
  for (Eigen::Index m = 0; m < a.cols(); ++m) {
    const Eigen::ArrayXd col = a.col(m).segment(begin, count).array();
    const Eigen::RowVectorXd other = b.col(m).transpose();
    d2 += (col.replicate(1, b.rows()) - other.array().replicate(count, 1)).square();
  }
  const Eigen::ArrayXXd z = d2.sqrt() * (std::sqrt(2.0 * params.nu()) / params.theta());
  const std::vector<double>& poly = params.half_integer_poly();
  Eigen::ArrayXXd sum = Eigen::ArrayXXd::Constant(count, b.rows(), poly.back());
  for (auto it = poly.rbegin() + 1; it != poly.rend(); ++it) sum = sum * z + *it;
  out = ((-z).exp() * sum).matrix();
}

constexpr Eigen::Index kBlockRows = 64;

}  // namespace

Matrix kernel_matrix_blocked(const Points& a, const Points& b, const MaternParams& params) {
  check_dims(a, b);
  Matrix out(a.rows(), b.rows());
  const Eigen::Index blocks = (a.rows() + kBlockRows - 1) / kBlockRows;
#pragma omp parallel for schedule(static) if (a.rows() * b.rows() > 4096)
  for (Eigen::Index k = 0; k < blocks; ++k) {
    const Eigen::Index begin = k * kBlockRows;
    const Eigen::Index count = std::min(kBlockRows, a.rows() - begin);
    kernel_block(a, begin, count, b, params, out.middleRows(begin, count));
  }
  return out;
}

Vector kernel_apply(const Points& a, const Points& b, const Vector& w, const MaternParams& params) {
  check_dims(a, b);
  if (w.size() != b.rows()) throw DomainError("kernel_apply: weight count does not match the centers");
  Vector out(a.rows());
  const Eigen::Index blocks = (a.rows() + kBlockRows - 1) / kBlockRows;
#pragma omp parallel for schedule(static) if (a.rows() * b.rows() > 4096)
  for (Eigen::Index k = 0; k < blocks; ++k) {
    const Eigen::Index begin = k * kBlockRows;
    const Eigen::Index count = std::min(kBlockRows, a.rows() - begin);
    Matrix block(count, b.rows());
    kernel_block(a, begin, count, b, params, block);
    out.segment(begin, count).noalias() = block * w;
  }
  return out;
}

MaternParams::MaternParams(double nu, double theta) : nu_(nu), theta_(theta) {
  if (!(nu > 0.0) || !std::isfinite(nu)) throw DomainError("Matern smoothness nu must be > 0");
  if (!(theta > 0.0) || !std::isfinite(theta)) {
    throw DomainError("Matern length scale theta must be > 0");
  }
  half_order_ = detect_half_order(nu);
  if (half_order_ >= 0) poly_ = half_integer_coefficients(half_order_);
}

double matern_eval(double r, const MaternParams& params) {
  if (!std::isfinite(r) || r < 0.0) {
    throw DomainError("matern_eval: distance must be finite and nonnegative");
  }
  if (r == 0.0) return 1.0;
  const double z = std::sqrt(2.0 * params.nu()) * r / params.theta();
  if (params.half_integer_order() >= 0) return half_integer_form(z, params.half_integer_poly());
  return general_form(z, params.nu());
}

double distance(PointView a, PointView b) {
  double s = 0.0;
  for (std::size_t m = 0; m < a.size(); ++m) {
    const double diff = a[m] - b[m];
    s += diff * diff;
  }
  return std::sqrt(s);
}

Matrix kernel_matrix_serial(const Points& a, const Points& b, const MaternParams& params) {
  check_dims(a, b);
  Matrix out(a.rows(), b.rows());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < b.rows(); ++j) {
      out(i, j) = matern_eval(distance(row_view(a, i), row_view(b, j)), params);
    }
  }
  return out;
}

Matrix kernel_matrix(const Points& a, const Points& b, const MaternParams& params) {
  check_dims(a, b);
  Matrix out(a.rows(), b.rows());
  const Eigen::Index rows = a.rows();
  const Eigen::Index cols = b.rows();
#pragma omp parallel for schedule(static) if (rows * cols > 4096)
  for (Eigen::Index i = 0; i < rows; ++i) {
    for (Eigen::Index j = 0; j < cols; ++j) {
      out(i, j) = matern_eval(distance(row_view(a, i), row_view(b, j)), params);
    }
  }
  return out;
}

}  // namespace fmmt
