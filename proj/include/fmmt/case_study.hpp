#pragma once

#include <map>
#include <string>
#include <vector>

#include "fmmt/dataset.hpp"
#include "fmmt/fmmt_test.hpp"
#include "fmmt/plot.hpp"

namespace fmmt {

// Shear-layer growth-rate data: simulator runs and physical measurements
// against convective Mach number on [0, 1.5].
struct ShearLayerBundle {
  Dataset simulation;  // n = 11
  Dataset physical;    // n = 32
  Box domain = Box({{0.0, 1.5}});
  std::vector<Box> partition;  // six cells of length 0.25
};

std::string default_shear_layer_dir();

// Reads simulation.csv and physical.csv from `dir`. Throws ParseError when a
// file is missing or malformed and DomainError when a sample size differs
// from 11 / 32 or a point leaves [0, 1.5].
ShearLayerBundle load_shear_layer(const std::string& dir);

// Interpolating (lambda = 0) Matern KRR surrogate of the simulator.
struct Surrogate {
  KrrFit fit;
  double theta;
  std::vector<double> theta_grid;
  std::vector<double> loo_error;  // mean squared leave-one-out error per theta
};

inline const std::vector<double>& surrogate_theta_grid() {
  static const std::vector<double> grid = {0.1, 0.15, 0.2, 0.3, 0.5, 0.75, 1.0, 1.5};
  return grid;
}

// theta minimizing the leave-one-out error (ties to the larger theta).
Surrogate build_surrogate(const Dataset& simulation, double nu = 3.5,
                          const std::vector<double>& theta_grid = surrogate_theta_grid());
Surrogate surrogate_with_theta(const Dataset& simulation, double nu, double theta);
BatchFn surrogate_simulator(const Surrogate& s);

struct ShearLayerResult {
  TestReport global;
  SubdomainReport subdomains;
  double surrogate_theta = 0.0;
  std::vector<double> theta_grid;
  std::vector<double> loo_error;
  // Global p-values with the surrogate theta pinned at the grid endpoints.
  double p_theta_min = 0.0;
  double p_theta_max = 0.0;
  double cv_c = 0.0;
  // Panels: fits, density, statistics, p-values.
  std::vector<Series> fits;
  std::vector<Series> density;
  std::vector<std::string> region_labels;  // "global", "1".."6"
  std::vector<double> statistics;
  std::vector<double> p_values;
};

ShearLayerResult run_shear_layer(const ShearLayerBundle& bundle, const TestConfig& config);

// Panel files keyed by file name: panel_fits.csv, panel_density.csv,
// panel_statistics.csv, panel_pvalues.csv (plus .svg versions when `svg`).
std::map<std::string, std::string> shear_layer_panels(const ShearLayerResult& result, double alpha, bool svg);

}  // namespace fmmt
