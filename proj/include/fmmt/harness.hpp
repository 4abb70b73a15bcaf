#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "fmmt/dataset.hpp"
#include "fmmt/fmmt_test.hpp"
#include "fmmt/scenarios.hpp"

namespace fmmt {

// Counter-based seed splitting: a fixed function of (parent, a, b).
std::uint64_t derive_seed(std::uint64_t parent, std::uint64_t a, std::uint64_t b = 0);

// Bit pattern of c (with -0 mapped to +0), used as a seed coordinate.
std::uint64_t c_key(double c);

struct StudySettings {
  int n = 0;                            // <= 0: scenario default
  int reps = 1000;
  double alpha = 0.05;
  std::uint64_t seed = 0;
  std::optional<Design> design;         // scenario default if unset
  std::optional<double> noise_sd;       // scenario default if unset
  bool run_subdomains = true;
  std::optional<bool> run_eh;           // default: 1-D scenarios only
  TestConfig test;                      // alpha/seed inside are overridden
  bool parallel = true;                 // false: single-threaded reference loop
};

struct PowerRow {
  double c = 0.0;
  double global = 0.0;
  std::vector<double> subdomain;
  double bonferroni = 0.0;
  std::optional<double> eh;
  int failures = 0;  // replications that raised a numerical error (counted as non-rejections)
};

struct PowerTable {
  std::string scenario;
  int n = 0;
  double alpha = 0.05;
  int reps = 0;
  std::uint64_t seed = 0;
  Design design = Design::kUniform;
  double noise_sd = 0.1;
  int subdomains = 0;
  bool has_eh = false;
  std::vector<PowerRow> rows;
};

// Data set for replication `rep` at modulation `c`: design points, responses
// alt_fn(x, c) + N(0, sd^2). Fully determined by (seed, c, rep).
Dataset simulate_dataset(const Scenario& scenario, double c, int n, Design design, double noise_sd,
                         std::uint64_t seed, int rep);

// Rejection flags of one replication.
struct ReplicationOutcome {
  bool global = false;
  std::vector<bool> subdomain;
  bool bonferroni = false;
  bool eh = false;
  bool failed = false;
};

ReplicationOutcome run_replication(const Scenario& scenario, double c, int rep, const StudySettings& settings,
                                   double eh_critical);

// Monte Carlo rejection rates on a grid of c. Replications are independent
// of execution order and thread count.
PowerTable run_study(const Scenario& scenario, const std::vector<double>& c_grid, const StudySettings& settings);

// CSV with a '#' metadata line; fixed 6-decimal formatting.
std::string format_power_table(const PowerTable& table);

}  // namespace fmmt
