#include "fmmt/case_study.hpp"

#include <cstdio>
#include <filesystem>
#include <sstream>

#include "fmmt/report.hpp"

namespace fmmt {

namespace {

constexpr int kSimulationSize = 11;
constexpr int kPhysicalSize = 32;
constexpr int kCurvePoints = 301;

Dataset load_member(const std::string& dir, const std::string& name, const Box& domain, int expected) {
  const std::filesystem::path path = std::filesystem::path(dir) / name;
  if (!std::filesystem::exists(path)) throw ParseError("shear-layer bundle: missing " + path.string());
  Dataset d = load_dataset(path.string(), domain);
  if (d.size() != expected) {
    throw DomainError("shear-layer bundle: " + path.string() + " has " + std::to_string(d.size()) + " rows, expected " +
                      std::to_string(expected));
  }
  return d;
}

std::vector<double> linspace(double a, double b, int count) {
  std::vector<double> v(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) v[static_cast<std::size_t>(i)] = a + (b - a) * i / (count - 1);
  return v;
}

Points column(const std::vector<double>& x) {
  Points p(static_cast<Eigen::Index>(x.size()), 1);
  for (std::size_t i = 0; i < x.size(); ++i) p(static_cast<Eigen::Index>(i), 0) = x[i];
  return p;
}

std::vector<double> to_std(const Vector& v) { return {v.data(), v.data() + v.size()}; }

std::string region_table(const std::vector<std::string>& labels, const std::vector<double>& values,
                         const std::string& column_name) {
  std::ostringstream os;
  os << "region," << column_name << '\n';
  for (std::size_t i = 0; i < labels.size(); ++i) os << labels[i] << ',' << format_full(values[i]) << '\n';
  return os.str();
}

}  // namespace

std::string default_shear_layer_dir() { return std::string(FMMT_DATA_DIR) + "/shear_layer"; }

ShearLayerBundle load_shear_layer(const std::string& dir) {
  ShearLayerBundle b;
  b.simulation = load_member(dir, "simulation.csv", b.domain, kSimulationSize);
  b.physical = load_member(dir, "physical.csv", b.domain, kPhysicalSize);
  b.partition = equal_split(b.domain, {6});
  return b;
}

Surrogate surrogate_with_theta(const Dataset& simulation, double nu, double theta) {
  const MaternParams params(nu, theta);
  return Surrogate{fit_krr(simulation.points, simulation.responses, params, 0.0), theta, {theta}, {}};
}

Surrogate build_surrogate(const Dataset& simulation, double nu, const std::vector<double>& theta_grid) {
  if (theta_grid.empty()) throw ConfigError("surrogate: empty theta grid");
  const Eigen::Index n = simulation.size();
  if (n < 3) throw DomainError("surrogate: need at least 3 simulator runs");
  std::vector<double> errors;
  for (double theta : theta_grid) {
    const MaternParams params(nu, theta);
    double sse = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) {
      Points x(n - 1, simulation.dim());
      Vector y(n - 1);
      for (Eigen::Index j = 0, r = 0; j < n; ++j) {
        if (j == i) continue;
        x.row(r) = simulation.points.row(j);
        y[r++] = simulation.responses[j];
      }
      const KrrFit fit = fit_krr(x, y, params, 0.0);
      const double e = predict(fit, row_view(simulation.points, i)) - simulation.responses[i];
      sse += e * e;
    }
    errors.push_back(sse / static_cast<double>(n));
  }
  std::size_t best = 0;
  for (std::size_t k = 1; k < errors.size(); ++k) {
    if (errors[k] <= errors[best]) best = k;
  }
  Surrogate s = surrogate_with_theta(simulation, nu, theta_grid[best]);
  s.theta_grid = theta_grid;
  s.loo_error = errors;
  return s;
}

BatchFn surrogate_simulator(const Surrogate& s) {
  return [fit = s.fit](const Points& x) { return predict_many(fit, x); };
}

ShearLayerResult run_shear_layer(const ShearLayerBundle& bundle, const TestConfig& config) {
  const Surrogate sur = build_surrogate(bundle.simulation, config.kernel.nu());
  const FittedModel model = fit_model(bundle.physical, bundle.domain, config);

  ShearLayerResult out{.global = test_on_box(model, surrogate_simulator(sur), bundle.domain, config),
                       .subdomains = subdomain_tests(model, surrogate_simulator(sur), bundle.partition, config),
                       .surrogate_theta = sur.theta,
                       .theta_grid = sur.theta_grid,
                       .loo_error = sur.loo_error,
                       .p_theta_min = 0.0,
                       .p_theta_max = 0.0,
                       .cv_c = model.cv_c,
                       .fits = {},
                       .density = {},
                       .region_labels = {},
                       .statistics = {},
                       .p_values = {}};
  const double nu = config.kernel.nu();
  out.p_theta_min = test_on_box(model, surrogate_simulator(surrogate_with_theta(bundle.simulation, nu, sur.theta_grid.front())),
                                bundle.domain, config)
                        .p_value;
  out.p_theta_max = test_on_box(model, surrogate_simulator(surrogate_with_theta(bundle.simulation, nu, sur.theta_grid.back())),
                                bundle.domain, config)
                        .p_value;

  const Interval& side = bundle.domain.side(0);
  const std::vector<double> xs = linspace(side.lower, side.upper, kCurvePoints);
  const Points grid = column(xs);
  out.fits.push_back({"physical_fit", xs, to_std(predict_many(model.fit, grid)), false});
  out.fits.push_back({"surrogate", xs, to_std(predict_many(sur.fit, grid)), false});
  out.fits.push_back(
      {"physical_data", to_std(bundle.physical.points.col(0)), to_std(bundle.physical.responses), true});
  out.fits.push_back(
      {"simulation_runs", to_std(bundle.simulation.points.col(0)), to_std(bundle.simulation.responses), true});

  std::vector<double> dens;
  for (double x : xs) dens.push_back(model.density(PointView(&x, 1)));
  out.density.push_back({"input_density", xs, dens, false});

  out.region_labels.emplace_back("global");
  out.statistics.push_back(out.global.statistic);
  out.p_values.push_back(out.global.p_value);
  for (std::size_t i = 0; i < out.subdomains.reports.size(); ++i) {
    out.region_labels.push_back(std::to_string(i + 1));
    out.statistics.push_back(out.subdomains.reports[i].statistic);
    out.p_values.push_back(out.subdomains.reports[i].p_value);
  }
  return out;
}

std::map<std::string, std::string> shear_layer_panels(const ShearLayerResult& r, double alpha, bool svg) {
  std::map<std::string, std::string> files;
  files["panel_fits.csv"] = series_csv(r.fits);
  files["panel_density.csv"] = series_csv(r.density);
  files["panel_statistics.csv"] = region_table(r.region_labels, r.statistics, "statistic");
  files["panel_pvalues.csv"] = region_table(r.region_labels, r.p_values, "p_value");
  if (svg) {
    files["panel_fits.svg"] = render_svg(LineChart{"Fits", "convective Mach number", "growth rate", r.fits, std::nullopt});
    files["panel_density.svg"] =
        render_svg(LineChart{"Input density", "convective Mach number", "density", r.density, std::nullopt});
    double t_max = 1.0;
    for (double t : r.statistics) {
      if (std::isfinite(t)) t_max = std::max(t_max, 1.1 * t);
    }
    files["panel_statistics.svg"] = render_svg(BarChart{"Test statistics", "T", r.region_labels, r.statistics, std::nullopt, t_max});
    files["panel_pvalues.svg"] = render_svg(BarChart{"p-values", "p", r.region_labels, r.p_values, alpha, 1.0});
  }
  return files;
}

}  // namespace fmmt
