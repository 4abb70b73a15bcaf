#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "fmmt/box.hpp"
#include "fmmt/common.hpp"

namespace fmmt {

enum class Design { kUniform, kTruncatedNormal };

std::string design_name(Design d);
std::optional<Design> parse_design(const std::string& s);

enum class ScenarioKind { kGlobal1D, kSubdomain1D, kGlobal2D, kQuadrant2D };

// Simulation scenario: H0 takes the simulator to be null_fn; data come from
// alt_fn(x, c), which equals null_fn when c = 0.
struct Scenario {
  std::string name;
  ScenarioKind kind;
  Box domain;
  std::function<double(PointView)> null_fn;
  std::function<double(PointView, double)> alt_fn;
  double noise_sd = 0.1;
  Design design = Design::kUniform;
  int default_n = 50;
  std::vector<Box> partition;
  std::vector<double> default_c_grid;

  int dim() const { return domain.dim(); }
  // Lower-case name with separators as '-', e.g. "sub1-high-frequency".
  std::string key() const;
};

const std::vector<Scenario>& builtin_scenarios();

// Case-insensitive lookup ignoring spaces, '-' and '_'; nullptr if unknown.
const Scenario* find_scenario(const std::string& name);

std::vector<std::string> scenario_names();

// c from -2 to 2 step 0.2 (1-D) or -0.5 to 0.5 step 0.05 (2-D).
std::vector<double> default_c_grid(int dim);

// Design points on the box; deterministic in `seed`. The truncated normal has
// mean 0.5 and s.d. 0.2 on [0, 1] per axis (affinely mapped onto the box) and
// is drawn by rejection from the untruncated normal.
Points sample_design(Design design, int n, const Box& box, std::uint64_t seed);

}  // namespace fmmt
