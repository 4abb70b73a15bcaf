#include "fmmt/density.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace fmmt {

namespace {

double epanechnikov(double u) { return std::abs(u) <= 1.0 ? 0.75 * (1.0 - u * u) : 0.0; }

// Antiderivatives of u^l K(u).
double m0(double u) { return 0.75 * (u - u * u * u / 3.0); }
double m1(double u) { return 0.75 * (u * u / 2.0 - u * u * u * u / 4.0); }
double m2(double u) { return 0.75 * (u * u * u / 3.0 - u * u * u * u * u / 5.0); }

void check_sample(const Points& sample, const Box& box) {
  if (sample.cols() != box.dim()) throw DomainError("density: sample dimension does not match the box");
  for (Eigen::Index i = 0; i < sample.rows(); ++i) {
    if (!box.contains(row_view(sample, i))) {
      throw DomainError("density: sample point " + std::to_string(i + 1) + " lies outside " + box.to_string());
    }
  }
}

}  // namespace

double boundary_kernel(double u, double lo, double hi) {
  if (lo <= -1.0 && hi >= 1.0) return epanechnikov(u);
  const double a = std::max(lo, -1.0);
  const double b = std::min(hi, 1.0);
  if (u < a || u > b || !(a < b)) return 0.0;
  const double a0 = m0(b) - m0(a);
  const double a1 = m1(b) - m1(a);
  const double a2 = m2(b) - m2(a);
  const double det = a0 * a2 - a1 * a1;
  if (det <= 0.0) return 0.0;
  return (a2 - a1 * u) * epanechnikov(u) / det;
}

DensityEstimate::DensityEstimate(Points sample, std::vector<double> bandwidths, Box box, double norm_const)
    : sample_(std::move(sample)), bandwidths_(std::move(bandwidths)), box_(std::move(box)), norm_const_(norm_const) {
  if (sample_.rows() < 1) throw DomainError("density: empty sample");
  check_sample(sample_, box_);
  if (static_cast<int>(bandwidths_.size()) != box_.dim()) throw DomainError("density: need one bandwidth per dimension");
  for (double h : bandwidths_) {
    if (!(h > 0.0) || !std::isfinite(h)) throw DomainError("density: bandwidths must be positive");
  }
  if (!(norm_const_ > 0.0) || !std::isfinite(norm_const_)) throw DomainError("density: norm_const must be positive");
}

double DensityEstimate::raw(PointView x) const {
  if (!box_.contains(x)) throw DomainError("density: evaluation point outside " + box_.to_string());
  const int d = box_.dim();
  double total = 0.0;
  for (Eigen::Index i = 0; i < sample_.rows(); ++i) {
    double prod = 1.0;
    for (int m = 0; m < d && prod != 0.0; ++m) {
      const double h = bandwidths_[static_cast<std::size_t>(m)];
      const Interval& s = box_.side(m);
      const double u = (x[static_cast<std::size_t>(m)] - sample_(i, m)) / h;
      const double lo = (x[static_cast<std::size_t>(m)] - s.upper) / h;
      const double hi = (x[static_cast<std::size_t>(m)] - s.lower) / h;
      prod *= boundary_kernel(u, lo, hi) / h;
    }
    total += prod;
  }
  return std::max(0.0, total / static_cast<double>(sample_.rows()));
}

double DensityEstimate::raw_uncorrected(PointView x) const {
  const int d = box_.dim();
  double total = 0.0;
  for (Eigen::Index i = 0; i < sample_.rows(); ++i) {
    double prod = 1.0;
    for (int m = 0; m < d; ++m) {
      const double h = bandwidths_[static_cast<std::size_t>(m)];
      prod *= epanechnikov((x[static_cast<std::size_t>(m)] - sample_(i, m)) / h) / h;
    }
    total += prod;
  }
  return total / static_cast<double>(sample_.rows());
}

double DensityEstimate::operator()(PointView x) const { return raw(x) / norm_const_; }

Vector DensityEstimate::on_grid_serial(const TensorGrid& grid) const {
  const Points pts = grid.points();
  Vector out(pts.rows());
  for (Eigen::Index i = 0; i < pts.rows(); ++i) out[i] = (*this)(row_view(pts, i));
  return out;
}

Vector DensityEstimate::on_grid(const TensorGrid& grid) const {
  if (grid.dim() != box_.dim()) throw DomainError("density: grid dimension mismatch");
  const int d = box_.dim();
  const Eigen::Index n = sample_.rows();
  // Per-dimension factor tables: factors[m](i, k) for sample i and axis node k.
  std::vector<Matrix> factors(static_cast<std::size_t>(d));
  for (int m = 0; m < d; ++m) {
    const Rule1D& axis = grid.axis(m);
    const double h = bandwidths_[static_cast<std::size_t>(m)];
    const Interval& s = box_.side(m);
    const auto q = static_cast<Eigen::Index>(axis.nodes.size());
    Matrix& f = factors[static_cast<std::size_t>(m)];
    f.resize(n, q);
    for (Eigen::Index k = 0; k < q; ++k) {
      const double x = axis.nodes[static_cast<std::size_t>(k)];
      if (x < s.lower - 1e-12 * s.length() || x > s.upper + 1e-12 * s.length()) {
        throw DomainError("density: grid leaves the estimation domain");
      }
      const double lo = (x - s.upper) / h;
      const double hi = (x - s.lower) / h;
      for (Eigen::Index i = 0; i < n; ++i) f(i, k) = boundary_kernel((x - sample_(i, m)) / h, lo, hi) / h;
    }
  }
  const Eigen::Index size = grid.size();
  const auto q = static_cast<Eigen::Index>(grid.points_per_dim());
  Vector out(size);
#pragma omp parallel for schedule(static) if (size * n > 8192)
  for (Eigen::Index g = 0; g < size; ++g) {
    std::vector<Eigen::Index> idx(static_cast<std::size_t>(d));
    Eigen::Index rest = g;
    for (int m = 0; m < d; ++m) {
      idx[static_cast<std::size_t>(m)] = rest % q;
      rest /= q;
    }
    double total = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) {
      double prod = factors[0](i, idx[0]);
      for (int m = 1; m < d && prod != 0.0; ++m) prod *= factors[static_cast<std::size_t>(m)](i, idx[static_cast<std::size_t>(m)]);
      total += prod;
    }
    out[g] = std::max(0.0, total / static_cast<double>(n)) / norm_const_;
  }
  return out;
}

DensityEstimate DensityEstimate::with_norm_const(double c) const {
  return DensityEstimate(sample_, bandwidths_, box_, c);
}

BandwidthChoice select_bandwidth(const Points& sample, const Box& box) {
  const Eigen::Index n = sample.rows();
  const int d = box.dim();
  if (n < 2) throw DomainError("select_bandwidth: need at least two sample points");
  check_sample(sample, box);

  std::vector<double> spread(static_cast<std::size_t>(d));
  bool degenerate = false;
  for (int m = 0; m < d; ++m) {
    const double mean = sample.col(m).mean();
    const double var = (sample.col(m).array() - mean).square().sum() / static_cast<double>(n - 1);
    const double sd = std::sqrt(var);
    if (!(sd > 1e-12 * box.side(m).length())) {
      spread[static_cast<std::size_t>(m)] = 0.0;
      degenerate = true;
    } else {
      spread[static_cast<std::size_t>(m)] = sd;
    }
  }
  const double rate = std::pow(static_cast<double>(n), -1.0 / (d + 4.0));
  auto bandwidths_for = [&](double c) {
    std::vector<double> h(static_cast<std::size_t>(d));
    for (int m = 0; m < d; ++m) {
      const double s = spread[static_cast<std::size_t>(m)];
      h[static_cast<std::size_t>(m)] = s > 0.0 ? c * s * rate : 0.1 * box.side(m).length();
    }
    return h;
  };

  const auto& grid = bandwidth_multipliers();
  double best_c = grid.front();
  double best_score = -std::numeric_limits<double>::infinity();
  for (double c : grid) {
    const std::vector<double> h = bandwidths_for(c);
    double score = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) {
      double total = 0.0;
      for (Eigen::Index j = 0; j < n; ++j) {
        if (j == i) continue;
        double prod = 1.0;
        for (int m = 0; m < d && prod != 0.0; ++m) {
          const double hm = h[static_cast<std::size_t>(m)];
          const Interval& s = box.side(m);
          const double x = sample(i, m);
          prod *= boundary_kernel((x - sample(j, m)) / hm, (x - s.upper) / hm, (x - s.lower) / hm) / hm;
        }
        total += prod;
      }
      score += std::log(std::max(1e-12, total / static_cast<double>(n - 1)));
    }
    if (score >= best_score) {
      best_score = score;
      best_c = c;
    }
  }
  return {bandwidths_for(best_c), best_c, degenerate};
}

DensityEstimate normalize(const DensityEstimate& est, int points_per_dim) {
  const int q = points_per_dim > 0 ? points_per_dim : (est.box().dim() == 1 ? 2048 : 256);
  const TensorGrid grid(est.box(), q);
  const DensityEstimate unit = est.with_norm_const(1.0);
  const double integral = unit.on_grid(grid).dot(grid.weights());
  if (!(integral > 0.0)) throw NumericalError("density: estimate integrates to zero over the domain");
  return est.with_norm_const(integral);
}

DensityEstimate estimate_density(const Points& sample, const Box& box, bool* degenerate) {
  const BandwidthChoice choice = select_bandwidth(sample, box);
  if (degenerate != nullptr) *degenerate = choice.degenerate;
  return normalize(DensityEstimate(sample, choice.bandwidths, box));
}

}  // namespace fmmt
