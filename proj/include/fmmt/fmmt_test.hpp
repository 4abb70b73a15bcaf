#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "fmmt/box.hpp"
#include "fmmt/dataset.hpp"
#include "fmmt/density.hpp"
#include "fmmt/fourier_basis.hpp"
#include "fmmt/kernel.hpp"
#include "fmmt/krr.hpp"
#include "fmmt/quadrature.hpp"

namespace fmmt {

// Simulator evaluated at a batch of points (rows).
using BatchFn = std::function<Vector(const Points&)>;

// Wraps a pointwise function as a batch function.
BatchFn pointwise(PointFn f);

struct TestConfig {
  double ell = 0.7;
  int k_max = 0;               // <= 0: floor(sqrt(n))
  int quad_points_per_dim = 0; // <= 0: max(512, 32 (k_max + 1))
  double alpha = 0.05;
  MaternParams kernel{3.5, 1.0};
  std::vector<double> c_grid = log_grid(25);  // lambda = C / n
  int cv_folds = 5;
  std::optional<double> lambda;  // fixed lambda; skips cross-validation
  std::uint64_t seed = 0;        // cross-validation shuffle

  int resolved_kmax(long long n) const;
  int resolved_quad(int k_max) const;
  // Throws ConfigError on ell <= 0.5, alpha outside (0,1) or a quadrature
  // resolution below 16 (k_max + 1).
  void validate(int k_max) const;
};

struct CoefficientRecord {
  BasisIndex basis;
  double s_hat;
  double weighted_z;  // sqrt(n) rho s_hat / sigma_hat
};

enum class NoiseStatus { kOk, kDegenerate };

struct TestReport {
  double statistic = 0.0;
  double p_value = 1.0;
  std::vector<CoefficientRecord> coefficients;
  double sigma_hat = 0.0;
  int k_max = 0;
  Box domain = Box::unit(1);
  long long n = 0;
  double ell = 0.7;
  int quad_points_per_dim = 0;
  NoiseStatus noise_status = NoiseStatus::kOk;
  std::vector<std::string> warnings;
};

struct SubdomainReport {
  std::vector<TestReport> reports;
  std::vector<double> bonferroni_adjusted_p;
  std::vector<bool> rejected_ier;
  std::vector<bool> rejected_fwer;
  double alpha = 0.05;
};

// Everything estimated once from the data and shared by the global and every
// subdomain test: KRR fit, residual scale and normalized input density.
struct FittedModel {
  KrrFit fit;
  DensityEstimate density;
  Box domain;
  double cv_c = 0.0;
  double response_scale = 1.0;  // RMS of the responses
  std::vector<std::string> warnings;
};

FittedModel fit_model(const Dataset& data, const Box& domain, const TestConfig& config);

// s_i = sum_g values[g] w[g] h_i(x_g): generalized Fourier coefficients of a
// function sampled on the tensor grid. OpenMP-parallel tensor contraction.
Vector fourier_coefficients(const Vector& values, const TensorGrid& grid, const std::vector<BasisIndex>& basis);
// Reference: direct sum over grid points per element.
Vector fourier_coefficients_serial(const Vector& values, const TensorGrid& grid,
                                   const std::vector<BasisIndex>& basis);

// Integral of discrepancy * sqrt_density * h_i over the box with
// `quad_points_per_dim` nodes per axis; throws ConfigError if that is below
// 16 (k_max + 1) for the largest frequency in `basis`.
Vector fourier_coefficients(const PointFn& discrepancy, const PointFn& sqrt_density,
                            const std::vector<BasisIndex>& basis, const Box& box, int quad_points_per_dim);

// max_j |sqrt(n) rho_j s_j / sigma|. sigma_hat must be > 0; at sigma_hat == 0
// throws NumericalError (callers use the degenerate-noise path).
double test_statistic(const Vector& s_hat, const std::vector<double>& rho, long long n, double sigma_hat);

// F(t) = prod_j (2 Phi(t / rho_j) - 1), one factor per basis element.
double limiting_cdf(double t, const std::vector<double>& rho);
// 1 - F(t) without cancellation.
double limiting_pvalue(double t, const std::vector<double>& rho);

std::vector<double> decay_weights(const std::vector<BasisIndex>& basis);

// Test of the fitted model against the simulator on one box of the domain
// (the domain itself for the global test).
TestReport test_on_box(const FittedModel& model, const BatchFn& simulator, const Box& box, const TestConfig& config);

TestReport global_test(const Dataset& data, const BatchFn& simulator, const Box& domain, const TestConfig& config);

SubdomainReport subdomain_tests(const FittedModel& model, const BatchFn& simulator,
                                const std::vector<Box>& partition, const TestConfig& config);
SubdomainReport subdomain_tests(const Dataset& data, const BatchFn& simulator, const Box& domain,
                                const std::vector<Box>& partition, const TestConfig& config);

// min(1, N p_i).
std::vector<double> bonferroni(const std::vector<double>& p_values);

}  // namespace fmmt
