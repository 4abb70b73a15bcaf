#include <cmath>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "fmmt/fmmt_test.hpp"

namespace {

using fmmt::Box;
using fmmt::Interval;

fmmt::Dataset noisy_sine(int n, double shift, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::normal_distribution<double> z(0.0, 0.1);
  fmmt::Dataset d{fmmt::Points(n, 1), fmmt::Vector(n), "test"};
  for (int i = 0; i < n; ++i) {
    d.points(i, 0) = u(rng);
    d.responses[i] = std::sin(2 * std::numbers::pi * d.points(i, 0)) + shift + z(rng);
  }
  return d;
}

fmmt::BatchFn sine_simulator() {
  return fmmt::pointwise([](fmmt::PointView x) { return std::sin(2 * std::numbers::pi * x[0]); });
}

TEST(LimitingDistribution, SingleFactorNormalQuantile) {
  EXPECT_NEAR(fmmt::limiting_pvalue(1.959964, {1.0}), 0.05, 1e-6);
  EXPECT_NEAR(fmmt::limiting_cdf(1.959964, {1.0}), 0.95, 1e-6);
}

TEST(LimitingDistribution, ProductOfFactors) {
  const std::vector<double> rho = {1.0, 0.5};
  const double t = 1.2;
  const double phi1 = std::erf(t / std::sqrt(2.0));
  const double phi2 = std::erf(t / 0.5 / std::sqrt(2.0));
  EXPECT_NEAR(fmmt::limiting_cdf(t, rho), phi1 * phi2, 1e-15);
  EXPECT_NEAR(fmmt::limiting_pvalue(t, rho), 1.0 - phi1 * phi2, 1e-15);
}

TEST(LimitingDistribution, MonotoneAndBounded) {
  const auto rho = fmmt::decay_weights(fmmt::enumerate_basis(7, 1));
  double prev = 0.0;
  for (int i = 0; i <= 1000; ++i) {
    const double f = fmmt::limiting_cdf(0.01 * i, rho);
    EXPECT_GE(f, prev);
    EXPECT_GE(f, 0.0);
    EXPECT_LE(f, 1.0);
    prev = f;
  }
  EXPECT_EQ(fmmt::limiting_cdf(0.0, rho), 0.0);
  EXPECT_EQ(fmmt::limiting_pvalue(0.0, rho), 1.0);
  EXPECT_GT(fmmt::limiting_pvalue(40.0, rho), 0.0);
  EXPECT_THROW(fmmt::limiting_cdf(-1.0, rho), fmmt::DomainError);
}

TEST(Statistic, MaxWeightedModulus) {
  fmmt::Vector s(3);
  s << 0.1, -0.4, 0.2;
  const double t = fmmt::test_statistic(s, {1.0, 0.5, 1.0}, 100, 0.5);
  EXPECT_DOUBLE_EQ(t, 10.0 * 0.4 * 0.5 / 0.5);
  EXPECT_THROW(fmmt::test_statistic(s, {1.0, 0.5, 1.0}, 100, 0.0), fmmt::NumericalError);
}

TEST(Bonferroni, Arithmetic) {
  const auto adj = fmmt::bonferroni({0.01, 0.2, 0.5, 0.001});
  EXPECT_DOUBLE_EQ(adj[0], 0.04);
  EXPECT_DOUBLE_EQ(adj[1], 0.8);
  EXPECT_DOUBLE_EQ(adj[2], 1.0);
  EXPECT_DOUBLE_EQ(adj[3], 0.004);
}

TEST(Coefficients, KnownProjection) {
  const auto basis = fmmt::enumerate_basis(3, 1);
  auto disc = [](fmmt::PointView x) { return 2.0 + 3.0 * std::cos(2 * std::numbers::pi * 2 * x[0]); };
  auto one = [](fmmt::PointView) { return 1.0; };
  const fmmt::Vector s = fmmt::fourier_coefficients(disc, one, basis, Box::unit(1), 256);
  EXPECT_NEAR(s[0], 2.0, 1e-10);
  EXPECT_NEAR(s[3], 3.0 / std::sqrt(2.0), 1e-10);
  for (int j : {1, 2, 4, 5, 6}) EXPECT_NEAR(s[j], 0.0, 1e-10);
}

TEST(Coefficients, ContractionMatchesDirectSum) {
  const Box box({Interval{0.0, 1.5}, Interval{0.0, 2.0}});
  const fmmt::TensorGrid grid(box, 64);
  const auto basis = fmmt::enumerate_basis(3, 2);
  const fmmt::Vector v = grid.evaluate([](fmmt::PointView x) { return std::exp(x[0] - x[1] * x[1]); });
  const fmmt::Vector a = fmmt::fourier_coefficients(v, grid, basis);
  const fmmt::Vector b = fmmt::fourier_coefficients_serial(v, grid, basis);
  EXPECT_LT((a - b).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(Config, Errors) {
  fmmt::TestConfig c;
  c.ell = 0.5;
  EXPECT_THROW(c.validate(5), fmmt::ConfigError);
  c = {};
  c.alpha = 1.0;
  EXPECT_THROW(c.validate(5), fmmt::ConfigError);
  c = {};
  c.quad_points_per_dim = 95;
  EXPECT_THROW(c.validate(5), fmmt::ConfigError);
  c.quad_points_per_dim = 96;
  EXPECT_NO_THROW(c.validate(5));
  EXPECT_EQ(fmmt::TestConfig{}.resolved_quad(7), 512);
  EXPECT_EQ(fmmt::TestConfig{}.resolved_quad(20), 672);
  EXPECT_EQ(fmmt::TestConfig{}.resolved_kmax(50), 7);
}

TEST(GlobalTest, DetectsShift) {
  fmmt::TestConfig cfg;
  cfg.seed = 4;
  const auto r = fmmt::global_test(noisy_sine(80, 0.3, 1), sine_simulator(), Box::unit(1), cfg);
  EXPECT_LT(r.p_value, 1e-6);
  EXPECT_EQ(r.n, 80);
  EXPECT_EQ(r.k_max, 8);
  EXPECT_EQ(r.coefficients.size(), 17u);
  EXPECT_EQ(r.noise_status, fmmt::NoiseStatus::kOk);
  EXPECT_NEAR(r.sigma_hat, 0.1, 0.04);
}

TEST(GlobalTest, ReproducibleWithSeed) {
  fmmt::TestConfig cfg;
  cfg.seed = 9;
  const auto d = noisy_sine(40, 0.0, 2);
  const auto a = fmmt::global_test(d, sine_simulator(), Box::unit(1), cfg);
  const auto b = fmmt::global_test(d, sine_simulator(), Box::unit(1), cfg);
  EXPECT_EQ(a.statistic, b.statistic);
  EXPECT_EQ(a.p_value, b.p_value);
}

TEST(GlobalTest, DegenerateNoise) {
  fmmt::Dataset d{fmmt::Points(10, 1), fmmt::Vector::Zero(10), "zeros"};
  for (int i = 0; i < 10; ++i) d.points(i, 0) = i / 9.0;
  fmmt::TestConfig cfg;
  auto zero = fmmt::pointwise([](fmmt::PointView) { return 0.0; });
  auto one = fmmt::pointwise([](fmmt::PointView) { return 1.0; });
  const auto same = fmmt::global_test(d, zero, Box::unit(1), cfg);
  EXPECT_EQ(same.noise_status, fmmt::NoiseStatus::kDegenerate);
  EXPECT_EQ(same.p_value, 1.0);
  EXPECT_EQ(same.statistic, 0.0);
  EXPECT_FALSE(same.warnings.empty());
  const auto off = fmmt::global_test(d, one, Box::unit(1), cfg);
  EXPECT_EQ(off.p_value, 0.0);
  EXPECT_TRUE(std::isinf(off.statistic));
}

TEST(GlobalTest, TooFewPoints) {
  fmmt::Dataset d = noisy_sine(4, 0.0, 1);
  EXPECT_THROW(fmmt::global_test(d, sine_simulator(), Box::unit(1), {}), fmmt::DomainError);
}

TEST(SubdomainTests, LocalizesShift) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::normal_distribution<double> z(0.0, 0.1);
  fmmt::Dataset d{fmmt::Points(120, 1), fmmt::Vector(120), "test"};
  for (int i = 0; i < 120; ++i) {
    const double x = u(rng);
    d.points(i, 0) = x;
    d.responses[i] = std::sin(2 * std::numbers::pi * x) + (x < 0.5 ? 0.5 : 0.0) + z(rng);
  }
  const Box dom = Box::unit(1);
  const auto parts = fmmt::equal_split(dom, {2});
  fmmt::TestConfig cfg;
  cfg.seed = 1;
  const auto r = fmmt::subdomain_tests(d, sine_simulator(), dom, parts, cfg);
  ASSERT_EQ(r.reports.size(), 2u);
  EXPECT_TRUE(r.rejected_fwer[0]);
  EXPECT_DOUBLE_EQ(r.bonferroni_adjusted_p[1], std::min(1.0, 2 * r.reports[1].p_value));
  EXPECT_EQ(r.reports[0].domain, parts[0]);
}

TEST(SubdomainTests, BadPartition) {
  const auto d = noisy_sine(30, 0.0, 1);
  EXPECT_THROW(fmmt::subdomain_tests(d, sine_simulator(), Box::unit(1), {Box({Interval{0.0, 0.4}})}, {}),
               fmmt::ConfigError);
}

}  // namespace
