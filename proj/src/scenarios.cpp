#include "fmmt/scenarios.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numbers>
#include <random>

namespace fmmt {

namespace {

using std::numbers::pi;

std::string normalize_name(const std::string& s) {
  std::string out;
  for (char ch : s) {
    if (ch == ' ' || ch == '-' || ch == '_') continue;
    out += static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
  }
  return out;
}

std::vector<double> symmetric_grid(double half_width, double step) {
  std::vector<double> g;
  const int count = static_cast<int>(std::lround(2.0 * half_width / step));
  for (int i = 0; i <= count; ++i) {
    double c = -half_width + step * i;
    c = std::round(c * 1e6) / 1e6;
    g.push_back(c == 0.0 ? 0.0 : c);
  }
  return g;
}

Scenario make_1d(std::string name, ScenarioKind kind, std::function<double(double)> null1,
                 std::function<double(double, double)> alt1) {
  Scenario s{.name = std::move(name), .kind = kind, .domain = Box::unit(1), .null_fn = {}, .alt_fn = {},
             .partition = {}, .default_c_grid = {}};
  s.null_fn = [null1](PointView x) { return null1(x[0]); };
  s.alt_fn = [alt1](PointView x, double c) { return alt1(x[0], c); };
  s.default_n = 50;
  s.partition = equal_split(s.domain, {3});
  s.default_c_grid = default_c_grid(1);
  return s;
}

double base_2d(PointView x) {
  return 1.0 + 0.5 * (x[0] + x[1]) + 0.3 * x[0] * x[1] + 0.2 * std::sin(2 * pi * x[0]) * std::cos(2 * pi * x[1]);
}

double modulation_2d(PointView x) { return std::sin(2 * pi * x[0]) * std::sin(2 * pi * x[1]); }

bool in_quad1(PointView x) { return x[0] >= 0.5 && x[0] <= 1.0 && x[1] >= 0.5 && x[1] <= 1.0; }
bool in_quad2(PointView x) { return x[0] >= 0.0 && x[0] <= 0.5 && x[1] >= 0.5 && x[1] <= 1.0; }

Scenario make_2d(std::string name, ScenarioKind kind, std::function<double(PointView, double)> alt) {
  Scenario s{.name = std::move(name), .kind = kind, .domain = Box::unit(2), .null_fn = base_2d, .alt_fn = std::move(alt),
             .partition = {}, .default_c_grid = {}};
  s.default_n = 200;
  s.partition = quadrants(s.domain);
  s.default_c_grid = default_c_grid(2);
  return s;
}

std::vector<Scenario> build() {
  const auto one = [](double) { return 1.0; };
  const auto ex = [](double x) { return std::exp(x); };
  const auto sn = [](double x) { return std::sin(2 * pi * x); };
  std::vector<Scenario> v;
  v.push_back(make_1d("Const-Linear", ScenarioKind::kGlobal1D, one, [](double x, double c) { return 1.0 + c * x; }));
  v.push_back(make_1d("Exp-Linear", ScenarioKind::kGlobal1D, ex, [](double x, double c) { return std::exp(x) + c * x; }));
  v.push_back(make_1d("Sin-Linear", ScenarioKind::kGlobal1D, sn,
                      [](double x, double c) { return std::sin(2 * pi * x) + c * x; }));
  v.push_back(make_1d("Const-Sin", ScenarioKind::kGlobal1D, one,
                      [](double x, double c) { return 1.0 + c * std::sin(2 * pi * x); }));
  v.push_back(make_1d("Exp-Sin", ScenarioKind::kGlobal1D, ex,
                      [](double x, double c) { return std::exp(x) + c * std::sin(2 * pi * x); }));
  v.push_back(make_1d("Sin-Scale", ScenarioKind::kGlobal1D, sn,
                      [](double x, double c) { return (1.0 + c) * std::sin(2 * pi * x); }));

  v.push_back(make_1d("Sub1-Low-Frequency", ScenarioKind::kSubdomain1D, ex, [](double x, double c) {
    return std::exp(x) + (x < 1.0 / 3.0 ? c * std::sin(6 * pi * x) : 0.0);
  }));
  v.push_back(make_1d("Sub1-High-Frequency", ScenarioKind::kSubdomain1D, ex, [](double x, double c) {
    return std::exp(x) + (x < 1.0 / 3.0 ? c * std::cos(12 * pi * x) : 0.0);
  }));
  v.push_back(make_1d("Multi-Subdomain", ScenarioKind::kSubdomain1D, ex, [](double x, double c) {
    return std::exp(x) + (x < 2.0 / 3.0 ? c * std::sin(6 * pi * x) : 0.0);
  }));

  v.push_back(make_2d("2D-Sin", ScenarioKind::kGlobal2D,
                      [](PointView x, double c) { return base_2d(x) + c * modulation_2d(x); }));
  v.push_back(make_2d("2D-Constant", ScenarioKind::kGlobal2D, [](PointView x, double c) { return base_2d(x) + c; }));
  v.push_back(make_2d("Quad-1-Modulation", ScenarioKind::kQuadrant2D, [](PointView x, double c) {
    return base_2d(x) + (in_quad1(x) ? c * modulation_2d(x) : 0.0);
  }));
  v.push_back(make_2d("Quad-2-Modulation", ScenarioKind::kQuadrant2D, [](PointView x, double c) {
    return base_2d(x) + (in_quad2(x) ? c * modulation_2d(x) : 0.0);
  }));
  v.push_back(make_2d("Multi-Quad-Modulation", ScenarioKind::kQuadrant2D, [](PointView x, double c) {
    const double ind = (in_quad1(x) ? 1.0 : 0.0) + (in_quad2(x) ? 1.0 : 0.0);
    return base_2d(x) + c * modulation_2d(x) * ind;
  }));
  return v;
}

}  // namespace

std::string design_name(Design d) { return d == Design::kUniform ? "uniform" : "truncated-normal"; }

std::optional<Design> parse_design(const std::string& s) {
  const std::string n = normalize_name(s);
  if (n == "uniform") return Design::kUniform;
  if (n == "truncatednormal" || n == "truncnorm" || n == "tn") return Design::kTruncatedNormal;
  return std::nullopt;
}

std::string Scenario::key() const {
  std::string out;
  for (char ch : name) {
    out += ch == ' ' || ch == '_' ? '-' : static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
  }
  return out;
}

const std::vector<Scenario>& builtin_scenarios() {
  static const std::vector<Scenario> all = build();
  return all;
}

const Scenario* find_scenario(const std::string& name) {
  const std::string wanted = normalize_name(name);
  for (const Scenario& s : builtin_scenarios()) {
    if (normalize_name(s.name) == wanted) return &s;
  }
  return nullptr;
}

std::vector<std::string> scenario_names() {
  std::vector<std::string> out;
  for (const Scenario& s : builtin_scenarios()) out.push_back(s.key());
  return out;
}

std::vector<double> default_c_grid(int dim) { return dim == 1 ? symmetric_grid(2.0, 0.2) : symmetric_grid(0.5, 0.05); }

Points sample_design(Design design, int n, const Box& box, std::uint64_t seed) {
  if (n < 1) throw DomainError("sample_design: n must be >= 1");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  std::normal_distribution<double> normal(0.5, 0.2);
  Points pts(n, box.dim());
  for (int i = 0; i < n; ++i) {
    for (int m = 0; m < box.dim(); ++m) {
      double u = 0.0;
      if (design == Design::kUniform) {
        u = unif(rng);
      } else {
        do {
          u = normal(rng);
        } while (u < 0.0 || u > 1.0);
      }
      const Interval& s = box.side(m);
      pts(i, m) = s.lower + s.length() * u;
    }
  }
  return pts;
}

}  // namespace fmmt
