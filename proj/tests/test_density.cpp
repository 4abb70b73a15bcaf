#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "fmmt/density.hpp"
#include "oracles.hpp"

namespace {

using fmmt::Box;
using fmmt::Interval;
using fmmt::Points;

Points uniform_sample(int n, int d, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  Points p(n, d);
  for (Eigen::Index i = 0; i < p.size(); ++i) p.data()[i] = u(rng);
  return p;
}

double moment(int l, double lo, double hi) {
  std::vector<double> x, w;
  fmmt_test::boost_composite(std::max(lo, -1.0), std::min(hi, 1.0), 4, x, w);
  double s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) s += w[i] * std::pow(x[i], l) * fmmt::boundary_kernel(x[i], lo, hi);
  return s;
}

TEST(BoundaryKernel, InteriorIsEpanechnikov) {
  EXPECT_DOUBLE_EQ(fmmt::boundary_kernel(0.0, -2.0, 2.0), 0.75);
  EXPECT_DOUBLE_EQ(fmmt::boundary_kernel(0.5, -1.0, 1.0), 0.75 * 0.75);
  EXPECT_DOUBLE_EQ(fmmt::boundary_kernel(1.5, -2.0, 2.0), 0.0);
}

TEST(BoundaryKernel, ReproducesLowMoments) {
  for (double lo : {-0.9, -0.5, 0.0}) {
    EXPECT_NEAR(moment(0, lo, 3.0), 1.0, 1e-12) << lo;
    EXPECT_NEAR(moment(1, lo, 3.0), 0.0, 1e-12) << lo;
    EXPECT_NEAR(moment(0, -3.0, -lo), 1.0, 1e-12) << lo;
    EXPECT_NEAR(moment(1, -3.0, -lo), 0.0, 1e-12) << lo;
  }
}

TEST(Density, GridPathsAgree) {
  const Box box({Interval{0.0, 1.5}, Interval{0.0, 2.0}});
  Points s = uniform_sample(80, 2, 4);
  s.col(0) *= 1.5;
  s.col(1) *= 2.0;
  const fmmt::DensityEstimate est(s, {0.3, 0.4}, box, 2.0);
  const fmmt::TensorGrid grid(box, 20);
  const fmmt::Vector a = est.on_grid(grid);
  const fmmt::Vector b = est.on_grid_serial(grid);
  EXPECT_LT((a - b).cwiseAbs().maxCoeff(), 1e-12);
  const Points pts = grid.points();
  EXPECT_NEAR(a[13], est(fmmt::row_view(pts, 13)), 1e-12);
}

TEST(Density, NormalizedIntegratesToOne) {
  const Box box = Box::unit(1);
  const auto est = fmmt::estimate_density(uniform_sample(200, 1, 8), box);
  const fmmt::TensorGrid grid(box, 4096);
  EXPECT_NEAR(grid.integrate([&](fmmt::PointView x) { return est(x); }), 1.0, 1e-6);
}

TEST(Density, BoundaryCorrectionHelpsAtEdges) {
  // Averaged over samples; a single draw at the face has s.d. near 0.13.
  const Box box = Box::unit(1);
  const double at0[] = {0.0};
  double corrected = 0.0, plain = 0.0;
  for (int r = 0; r < 40; ++r) {
    const fmmt::DensityEstimate est(uniform_sample(2000, 1, 100 + r), {0.15}, box);
    corrected += est.raw(at0) / 40;
    plain += est.raw_uncorrected(at0) / 40;
  }
  EXPECT_NEAR(corrected, 1.0, 0.06);
  EXPECT_NEAR(plain, 0.5, 0.03);
}

TEST(Density, OutsideBoxThrows) {
  const fmmt::DensityEstimate est(uniform_sample(20, 1, 1), {0.2}, Box::unit(1));
  const double x[] = {1.5};
  EXPECT_THROW(est.raw(x), fmmt::DomainError);
}

TEST(Bandwidth, DegenerateSpreadFallsBack) {
  Points s(10, 2);
  for (int i = 0; i < 10; ++i) {
    s(i, 0) = 0.3;
    s(i, 1) = i / 9.0;
  }
  const auto choice = fmmt::select_bandwidth(s, Box::unit(2));
  EXPECT_TRUE(choice.degenerate);
  EXPECT_DOUBLE_EQ(choice.bandwidths[0], 0.1);
}

TEST(Bandwidth, MultiplierFromGrid) {
  const auto choice = fmmt::select_bandwidth(uniform_sample(100, 1, 3), Box::unit(1));
  EXPECT_FALSE(choice.degenerate);
  bool found = false;
  for (double c : fmmt::bandwidth_multipliers()) found = found || c == choice.multiplier;
  EXPECT_TRUE(found);
}

}  // namespace
