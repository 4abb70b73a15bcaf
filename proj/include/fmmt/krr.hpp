#pragma once

#include <cstdint>
#include <vector>

#include "fmmt/common.hpp"
#include "fmmt/kernel.hpp"

namespace fmmt {

// Fitted kernel ridge regressor f(x) = K(x, X) w.
//
// The weights solve (K + n*lambda*I + jitter*I) w = Y. The jitter starts at
// 1e-10 and escalates by 10x (cap 1e-6) until the Cholesky factorization
// succeeds and the linear-system residual is below 1e-8 |Y|.
class KrrFit {
 public:
  const Points& centers() const { return centers_; }
  const Vector& weights() const { return weights_; }
  const Vector& fitted() const { return fitted_; }
  const MaternParams& params() const { return params_; }
  double lambda() const { return lambda_; }
  double jitter() const { return jitter_; }
  // Residual variance estimate and smoother trace; see noise_variance().
  double sigma_hat() const { return sigma_hat_; }
  double edf() const { return edf_; }
  int dim() const { return static_cast<int>(centers_.cols()); }
  Eigen::Index size() const { return centers_.rows(); }

 private:
  friend KrrFit fit_krr(const Points&, const Vector&, const MaternParams&, double);

  KrrFit(Points centers, Vector weights, Vector fitted, MaternParams params, double lambda,
         double jitter, double sigma_hat, double edf)
      : centers_(std::move(centers)),
        weights_(std::move(weights)),
        fitted_(std::move(fitted)),
        params_(params),
        lambda_(lambda),
        jitter_(jitter),
        sigma_hat_(sigma_hat),
        edf_(edf) {}

  Points centers_;
  Vector weights_;
  Vector fitted_;
  MaternParams params_;
  double lambda_;
  double jitter_;
  double sigma_hat_;
  double edf_;
};

KrrFit fit_krr(const Points& x, const Vector& y, const MaternParams& params, double lambda);

double predict(const KrrFit& fit, PointView x);

// Predictions at many points; OpenMP-parallel over the rows of `x`.
Vector predict_many(const KrrFit& fit, const Points& x);
Vector predict_many_serial(const KrrFit& fit, const Points& x);

// Trace of the smoother S = K (K + n lambda I)^{-1}; equals n at lambda = 0.
double effective_dof(const Matrix& gram, double lambda);

// sigma^2 = RSS / (n - tr S), or RSS / n when n <= tr S.
double noise_variance(const Vector& y, const Vector& fitted, double edf);
double noise_variance(const KrrFit& fit, const Points& x, const Vector& y);

// `count` values of C log-spaced over [lo, hi]; lambda = C / n.
std::vector<double> log_grid(std::size_t count, double lo = 1e-9, double hi = 1.0);

struct CvResult {
  double lambda;             // C* / n
  double c_value;            // C*
  std::vector<double> cv_error;  // mean out-of-fold squared error per grid entry
};

// K-fold CV over regularization constants C (each training fold uses
// n_train * lambda = C). Folds are a round-robin split of a seeded shuffle.
// Ties go to the larger C.
CvResult cross_validate(const Points& x, const Vector& y, const MaternParams& params,
                        const std::vector<double>& c_grid, int folds, std::uint64_t seed);

double cross_validate_lambda(const Points& x, const Vector& y, const MaternParams& params,
                             const std::vector<double>& c_grid, int folds, std::uint64_t seed);

}  // namespace fmmt
