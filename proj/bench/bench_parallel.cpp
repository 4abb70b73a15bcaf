// Serial reference paths against the OpenMP / blocked ones. Thread count
// follows OMP_NUM_THREADS.
#include <random>

#include <benchmark/benchmark.h>

#include "fmmt/harness.hpp"

namespace {

fmmt::Points uniform_points(Eigen::Index n, int d, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  fmmt::Points p(n, d);
  for (Eigen::Index i = 0; i < p.size(); ++i) p.data()[i] = u(rng);
  return p;
}

const fmmt::MaternParams kParams(3.5, 1.0);

void BM_KernelMatrixSerial(benchmark::State& state) {
  const auto a = uniform_points(state.range(0), 2, 1);
  const auto b = uniform_points(200, 2, 2);
  for (auto _ : state) benchmark::DoNotOptimize(fmmt::kernel_matrix_serial(a, b, kParams));
}
void BM_KernelMatrixParallel(benchmark::State& state) {
  const auto a = uniform_points(state.range(0), 2, 1);
  const auto b = uniform_points(200, 2, 2);
  for (auto _ : state) benchmark::DoNotOptimize(fmmt::kernel_matrix(a, b, kParams));
}
void BM_KernelMatrixBlocked(benchmark::State& state) {
  const auto a = uniform_points(state.range(0), 2, 1);
  const auto b = uniform_points(200, 2, 2);
  for (auto _ : state) benchmark::DoNotOptimize(fmmt::kernel_matrix_blocked(a, b, kParams));
}
BENCHMARK(BM_KernelMatrixSerial)->Arg(4096)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_KernelMatrixParallel)->Arg(4096)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_KernelMatrixBlocked)->Arg(4096)->Unit(benchmark::kMillisecond);

fmmt::KrrFit sample_fit() {
  const auto x = uniform_points(200, 2, 3);
  fmmt::Vector y(200);
  for (int i = 0; i < 200; ++i) y[i] = std::sin(3.0 * x(i, 0)) + x(i, 1);
  return fmmt::fit_krr(x, y, kParams, 1e-4);
}

void BM_PredictSerial(benchmark::State& state) {
  const auto fit = sample_fit();
  const auto q = fmmt::TensorGrid(fmmt::Box::unit(2), 128).points();
  for (auto _ : state) benchmark::DoNotOptimize(fmmt::predict_many_serial(fit, q));
}
void BM_PredictBlocked(benchmark::State& state) {
  const auto fit = sample_fit();
  const auto q = fmmt::TensorGrid(fmmt::Box::unit(2), 128).points();
  for (auto _ : state) benchmark::DoNotOptimize(fmmt::predict_many(fit, q));
}
BENCHMARK(BM_PredictSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_PredictBlocked)->Unit(benchmark::kMillisecond);

void BM_DensitySerial(benchmark::State& state) {
  const fmmt::DensityEstimate est(uniform_points(200, 2, 4), {0.2, 0.2}, fmmt::Box::unit(2));
  const fmmt::TensorGrid grid(fmmt::Box::unit(2), 128);
  for (auto _ : state) benchmark::DoNotOptimize(est.on_grid_serial(grid));
}
void BM_DensityParallel(benchmark::State& state) {
  const fmmt::DensityEstimate est(uniform_points(200, 2, 4), {0.2, 0.2}, fmmt::Box::unit(2));
  const fmmt::TensorGrid grid(fmmt::Box::unit(2), 128);
  for (auto _ : state) benchmark::DoNotOptimize(est.on_grid(grid));
}
BENCHMARK(BM_DensitySerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_DensityParallel)->Unit(benchmark::kMillisecond);

void BM_CoefficientsSerial(benchmark::State& state) {
  const fmmt::TensorGrid grid(fmmt::Box::unit(2), 128);
  const auto basis = fmmt::enumerate_basis(7, 2);
  const fmmt::Vector v = grid.evaluate([](fmmt::PointView x) { return x[0] * x[1]; });
  for (auto _ : state) benchmark::DoNotOptimize(fmmt::fourier_coefficients_serial(v, grid, basis));
}
void BM_CoefficientsContraction(benchmark::State& state) {
  const fmmt::TensorGrid grid(fmmt::Box::unit(2), 128);
  const auto basis = fmmt::enumerate_basis(7, 2);
  const fmmt::Vector v = grid.evaluate([](fmmt::PointView x) { return x[0] * x[1]; });
  for (auto _ : state) benchmark::DoNotOptimize(fmmt::fourier_coefficients(v, grid, basis));
}
BENCHMARK(BM_CoefficientsSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_CoefficientsContraction)->Unit(benchmark::kMillisecond);

void study(benchmark::State& state, bool parallel) {
  fmmt::StudySettings st;
  st.n = 50;
  st.reps = 20;
  st.seed = 1;
  st.parallel = parallel;
  const fmmt::Scenario& s = *fmmt::find_scenario("Sub1-High-Frequency");
  for (auto _ : state) benchmark::DoNotOptimize(fmmt::run_study(s, {0.0, 1.0}, st));
}
void BM_StudySerial(benchmark::State& state) { study(state, false); }
void BM_StudyParallel(benchmark::State& state) { study(state, true); }
BENCHMARK(BM_StudySerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_StudyParallel)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
