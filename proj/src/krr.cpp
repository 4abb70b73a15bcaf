#include "fmmt/krr.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <string>

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>

namespace fmmt {

namespace {

constexpr double kJitterStart = 1e-10;
constexpr double kJitterCap = 1e-6;
constexpr double kResidualTol = 1e-8;

struct Solution {
  Vector weights;
  double jitter;
};

// Solves (gram + (reg + jitter) I) w = y with jitter escalation and two rounds
// of iterative refinement.
Solution solve_regularized(const Matrix& gram, const Vector& y, double reg) {
  const Eigen::Index n = gram.rows();
  const double y_norm = y.norm();
  for (double jitter = kJitterStart; jitter <= kJitterCap * 1.0000001; jitter *= 10.0) {
    Matrix a = gram;
    a.diagonal().array() += reg + jitter;
    Eigen::LLT<Matrix> llt(a);
    if (llt.info() != Eigen::Success) continue;
    Vector w = llt.solve(y);
    Vector resid = y - a * w;
    for (int pass = 0; pass < 2 && resid.norm() > kResidualTol * y_norm; ++pass) {
      w += llt.solve(resid);
      resid = y - a * w;
    }
    if (!w.allFinite()) continue;
    if (resid.norm() <= kResidualTol * y_norm || y_norm == 0.0) return {std::move(w), jitter};
  }
  throw NumericalError("KRR: factorization of the " + std::to_string(n) + "x" +
                       std::to_string(n) + " system failed after jitter escalation to 1e-6");
}

void check_inputs(const Points& x, const Vector& y) {
  if (x.rows() < 1) throw DomainError("KRR: need at least one observation");
  if (x.rows() != y.size()) {
    throw DomainError("KRR: " + std::to_string(x.rows()) + " points but " +
                      std::to_string(y.size()) + " responses");
  }
}

}  // namespace

KrrFit fit_krr(const Points& x, const Vector& y, const MaternParams& params, double lambda) {
  check_inputs(x, y);
  if (!(lambda >= 0.0) || !std::isfinite(lambda)) throw DomainError("KRR: lambda must be >= 0");
  const auto n = static_cast<double>(x.rows());
  const Matrix gram = kernel_matrix(x, x, params);
  Solution sol = solve_regularized(gram, y, n * lambda);
  Vector fitted = gram * sol.weights;
  const double edf = effective_dof(gram, lambda);
  const double sigma2 = noise_variance(y, fitted, edf);
  return KrrFit(x, std::move(sol.weights), std::move(fitted), params, lambda, sol.jitter,
                std::sqrt(sigma2), edf);
}

double predict(const KrrFit& fit, PointView x) {
  if (static_cast<int>(x.size()) != fit.dim()) {
    throw DomainError("predict: point has dimension " + std::to_string(x.size()) + ", fit has " +
                      std::to_string(fit.dim()));
  }
  double s = 0.0;
  const Points& c = fit.centers();
  for (Eigen::Index j = 0; j < c.rows(); ++j) {
    s += matern_eval(distance(x, row_view(c, j)), fit.params()) * fit.weights()[j];
  }
  return s;
}

Vector predict_many_serial(const KrrFit& fit, const Points& x) {
  if (x.cols() != fit.dim()) throw DomainError("predict_many: dimension mismatch");
  Vector out(x.rows());
  for (Eigen::Index i = 0; i < x.rows(); ++i) out[i] = predict(fit, row_view(x, i));
  return out;
}

Vector predict_many(const KrrFit& fit, const Points& x) {
  if (x.cols() != fit.dim()) throw DomainError("predict_many: dimension mismatch");
  return kernel_apply(x, fit.centers(), fit.weights(), fit.params());
}

double effective_dof(const Matrix& gram, double lambda) {
  const auto n = static_cast<double>(gram.rows());
  if (lambda == 0.0) return n;
  Eigen::SelfAdjointEigenSolver<Matrix> eig(gram, Eigen::EigenvaluesOnly);
  if (eig.info() != Eigen::Success) throw NumericalError("effective_dof: eigen-decomposition failed");
  const double reg = n * lambda;
  double tr = 0.0;
  for (Eigen::Index i = 0; i < eig.eigenvalues().size(); ++i) {
    const double mu = std::max(0.0, eig.eigenvalues()[i]);
    tr += mu / (mu + reg);
  }
  return std::clamp(tr, 0.0, n);
}

double noise_variance(const Vector& y, const Vector& fitted, double edf) {
  const auto n = static_cast<double>(y.size());
  const double rss = (y - fitted).squaredNorm();
  if (n <= edf) return rss / n;
  return rss / (n - edf);
}

double noise_variance(const KrrFit& fit, const Points& x, const Vector& y) {
  check_inputs(x, y);
  return noise_variance(y, predict_many(fit, x), fit.edf());
}

std::vector<double> log_grid(std::size_t count, double lo, double hi) {
  if (count == 0) return {};
  if (count == 1) return {lo};
  std::vector<double> grid(count);
  const double a = std::log10(lo);
  const double b = std::log10(hi);
  for (std::size_t i = 0; i < count; ++i) {
    grid[i] = std::pow(10.0, a + (b - a) * static_cast<double>(i) / static_cast<double>(count - 1));
  }
  return grid;
}

CvResult cross_validate(const Points& x, const Vector& y, const MaternParams& params,
                        const std::vector<double>& c_grid, int folds, std::uint64_t seed) {
  check_inputs(x, y);
  if (c_grid.empty()) throw DomainError("cross_validate: empty regularization grid");
  const Eigen::Index n = x.rows();
  if (folds < 2) throw DomainError("cross_validate: need at least 2 folds");
  if (n < folds) throw DomainError("cross_validate: fewer observations than folds");

  if (c_grid.size() == 1) {
    return {c_grid.front() / static_cast<double>(n), c_grid.front(), {0.0}};
  }

  std::vector<Eigen::Index> perm(static_cast<std::size_t>(n));
  std::iota(perm.begin(), perm.end(), Eigen::Index{0});
  std::mt19937_64 rng(seed);
  std::shuffle(perm.begin(), perm.end(), rng);
  std::vector<int> fold_of(static_cast<std::size_t>(n));
  for (std::size_t i = 0; i < perm.size(); ++i) fold_of[static_cast<std::size_t>(perm[i])] = static_cast<int>(i % folds);

  const Matrix gram = kernel_matrix(x, x, params);

  struct Split {
    std::vector<Eigen::Index> train, test;
    Matrix k_train, k_cross;
    Vector y_train;
  };
  std::vector<Split> splits(static_cast<std::size_t>(folds));
  for (int f = 0; f < folds; ++f) {
    Split& s = splits[static_cast<std::size_t>(f)];
    for (Eigen::Index i = 0; i < n; ++i) {
      (fold_of[static_cast<std::size_t>(i)] == f ? s.test : s.train).push_back(i);
    }
    const auto nt = static_cast<Eigen::Index>(s.train.size());
    const auto nv = static_cast<Eigen::Index>(s.test.size());
    s.k_train.resize(nt, nt);
    s.k_cross.resize(nv, nt);
    s.y_train.resize(nt);
    for (Eigen::Index a = 0; a < nt; ++a) {
      s.y_train[a] = y[s.train[static_cast<std::size_t>(a)]];
      for (Eigen::Index b = 0; b < nt; ++b) {
        s.k_train(a, b) = gram(s.train[static_cast<std::size_t>(a)], s.train[static_cast<std::size_t>(b)]);
      }
      for (Eigen::Index v = 0; v < nv; ++v) {
        s.k_cross(v, a) = gram(s.test[static_cast<std::size_t>(v)], s.train[static_cast<std::size_t>(a)]);
      }
    }
  }

  const auto grid_size = static_cast<std::ptrdiff_t>(c_grid.size());
  std::vector<double> errors(c_grid.size(), std::numeric_limits<double>::infinity());
#pragma omp parallel for schedule(dynamic) if (n >= 100)
  for (std::ptrdiff_t g = 0; g < grid_size; ++g) {
    double sse = 0.0;
    try {
      for (const Split& s : splits) {
        // n_train * lambda = C for every fold.
        const Solution sol = solve_regularized(s.k_train, s.y_train, c_grid[static_cast<std::size_t>(g)]);
        const Vector pred = s.k_cross * sol.weights;
        for (Eigen::Index v = 0; v < pred.size(); ++v) {
          const double e = y[s.test[static_cast<std::size_t>(v)]] - pred[v];
          sse += e * e;
        }
      }
      errors[static_cast<std::size_t>(g)] = sse / static_cast<double>(n);
    } catch (const NumericalError&) {
      errors[static_cast<std::size_t>(g)] = std::numeric_limits<double>::infinity();
    }
  }

  std::size_t best = 0;
  for (std::size_t g = 1; g < c_grid.size(); ++g) {
    const bool larger = c_grid[g] > c_grid[best];
    if (errors[g] < errors[best] || (errors[g] == errors[best] && larger)) best = g;
  }
  if (!std::isfinite(errors[best])) throw NumericalError("cross_validate: every candidate failed");
  return {c_grid[best] / static_cast<double>(n), c_grid[best], std::move(errors)};
}

double cross_validate_lambda(const Points& x, const Vector& y, const MaternParams& params,
                             const std::vector<double>& c_grid, int folds, std::uint64_t seed) {
  return cross_validate(x, y, params, c_grid, folds, seed).lambda;
}

}  // namespace fmmt
