#pragma once

#include <vector>

#include "fmmt/box.hpp"
#include "fmmt/common.hpp"
#include "fmmt/quadrature.hpp"

namespace fmmt {

// Boundary-corrected product Epanechnikov density estimate on a box.
//
// Each factor is the Epanechnikov kernel K(u) = 3/4 (1 - u^2) on [-1, 1].
// Within one bandwidth of a face the factor is replaced by the local-linear
// boundary kernel (a2 - a1 u) K(u) / (a0 a2 - a1^2), where a_l are the moments
// of K over the part of [-1, 1] that stays inside the box. The summed estimate
// is clipped at zero and divided by norm_const.
class DensityEstimate {
 public:
  DensityEstimate(Points sample, std::vector<double> bandwidths, Box box, double norm_const = 1.0);

  const Points& sample() const { return sample_; }
  const std::vector<double>& bandwidths() const { return bandwidths_; }
  const Box& box() const { return box_; }
  double norm_const() const { return norm_const_; }

  // Clipped estimate before division by norm_const. Throws if x is outside the box.
  double raw(PointView x) const;
  // Same without the boundary correction (plain product kernel).
  double raw_uncorrected(PointView x) const;
  // raw(x) / norm_const.
  double operator()(PointView x) const;

  // Normalized estimate at every node of a tensor grid on a sub-box of the
  // domain (flat grid order). OpenMP-parallel over nodes.
  Vector on_grid(const TensorGrid& grid) const;
  Vector on_grid_serial(const TensorGrid& grid) const;

  DensityEstimate with_norm_const(double c) const;

 private:
  Points sample_;
  std::vector<double> bandwidths_;
  Box box_;
  double norm_const_;
};

// Epanechnikov factor for scaled offset u when the admissible offsets are
// [lo, hi] (lo = (x - upper)/h, hi = (x - lower)/h). Interior points
// (lo <= -1, hi >= 1) get the plain kernel.
double boundary_kernel(double u, double lo, double hi);

struct BandwidthChoice {
  std::vector<double> bandwidths;
  double multiplier;         // selected c
  bool degenerate = false;   // some dimension had zero spread
};

inline const std::vector<double>& bandwidth_multipliers() {
  static const std::vector<double> grid = {0.5, 0.75, 1.0, 1.25, 1.5, 1.75, 2.0, 2.25, 2.5, 2.75, 3.0};
  return grid;
}

// h_m = c * s_m * n^{-1/(d+4)} with c picked by leave-one-out log-likelihood
// (floor 1e-12 inside the log, ties to larger c). A dimension with zero
// sample spread falls back to h_m = 0.1 * side length.
BandwidthChoice select_bandwidth(const Points& sample, const Box& box);

// Sets norm_const to the integral of the raw estimate over the box using a
// tensor composite rule (`points_per_dim` <= 0 picks 2048 in 1-D, 256 otherwise).
DensityEstimate normalize(const DensityEstimate& est, int points_per_dim = 0);

// select_bandwidth + normalize.
DensityEstimate estimate_density(const Points& sample, const Box& box, bool* degenerate = nullptr);

}  // namespace fmmt
