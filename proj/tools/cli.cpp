#include "cli.hpp"

#include <cstdlib>
#include <filesystem>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"

#include "fmmt/case_study.hpp"
#include "fmmt/harness.hpp"
#include "fmmt/plot.hpp"
#include "fmmt/report.hpp"
#include "fmmt/scenarios.hpp"

namespace fmmt::cli {

namespace {

namespace fs = std::filesystem;

struct Flags {
  std::optional<std::string> data;
  std::optional<std::string> simulator;
  std::optional<std::string> scenario;
  std::optional<std::string> domain;
  std::optional<std::string> split;
  std::optional<double> alpha;
  std::optional<double> ell;
  std::optional<int> kmax;
  std::optional<int> quad;
  std::optional<std::uint64_t> seed;
  std::optional<int> reps;
  std::optional<int> n;
  std::optional<std::string> c;
  std::optional<std::string> c_grid;
  std::optional<std::string> design;
  std::optional<double> noise_sd;
  std::optional<std::string> out;
  std::optional<std::string> config;
  bool plots = false;
};

std::vector<std::string> split_on(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::string cur;
  std::istringstream is(s);
  while (std::getline(is, cur, sep)) parts.push_back(cur);
  if (!s.empty() && s.back() == sep) parts.emplace_back();
  return parts;
}

double to_double(const std::string& s, const std::string& what) {
  std::size_t pos = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &pos);
  } catch (const std::exception&) {
    throw ConfigError(what + ": '" + s + "' is not a number");
  }
  if (pos != s.size()) throw ConfigError(what + ": '" + s + "' is not a number");
  return v;
}

template <class T>
std::optional<T> from_config(const Json& cfg, const char* key) {
  if (!cfg.contains(key)) return std::nullopt;
  try {
    return cfg.at(key).get<T>();
  } catch (const nlohmann::json::exception&) {
    throw ConfigError(std::string("config: field '") + key + "' has the wrong type");
  }
}

// flag > config file > default
template <class T>
T resolve(const std::optional<T>& flag, const Json& cfg, const char* key, T fallback) {
  if (flag) return *flag;
  if (auto v = from_config<T>(cfg, key)) return *v;
  return fallback;
}

Json load_config(const Flags& f) {
  if (!f.config) return Json::object();
  Json j;
  try {
    j = Json::parse(read_text_file(*f.config));
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(*f.config + ": " + e.what());
  }
  if (!j.is_object()) throw ParseError(*f.config + ": top level must be an object");
  return j;
}

std::uint64_t resolve_seed(const Flags& f, const Json& cfg) {
  if (f.seed) return *f.seed;
  if (auto v = from_config<std::uint64_t>(cfg, "seed")) return *v;
  if (const char* env = std::getenv("FMMT_SEED"); env != nullptr && *env != '\0') {
    try {
      std::size_t pos = 0;
      const unsigned long long v = std::stoull(env, &pos);
      if (pos == std::string(env).size()) return v;
    } catch (const std::exception&) {
    }
    throw ConfigError(std::string("FMMT_SEED='") + env + "' is not a non-negative integer");
  }
  return 0;
}

TestConfig build_test_config(const Flags& f, const Json& cfg, std::uint64_t seed) {
  TestConfig tc;
  tc.alpha = resolve(f.alpha, cfg, "alpha", tc.alpha);
  tc.ell = resolve(f.ell, cfg, "ell", tc.ell);
  tc.k_max = resolve(f.kmax, cfg, "kmax", tc.k_max);
  tc.quad_points_per_dim = resolve(f.quad, cfg, "quad_points_per_dim", tc.quad_points_per_dim);
  tc.cv_folds = resolve(std::optional<int>{}, cfg, "cv_folds", tc.cv_folds);
  if (cfg.contains("kernel")) {
    const Json& k = cfg.at("kernel");
    tc.kernel = MaternParams(resolve(std::optional<double>{}, k, "nu", tc.kernel.nu()),
                             resolve(std::optional<double>{}, k, "theta", tc.kernel.theta()));
  }
  if (auto l = from_config<double>(cfg, "lambda")) tc.lambda = *l;
  tc.seed = seed;
  return tc;
}

std::optional<Box> resolve_domain(const Flags& f, const Json& cfg) {
  if (f.domain) {
    std::vector<Interval> sides;
    for (auto [a, b] : parse_domain(*f.domain)) sides.push_back({a, b});
    return Box(std::move(sides));
  }
  if (cfg.contains("domain")) {
    const Json& d = cfg.at("domain");
    if (d.is_string()) {
      std::vector<Interval> sides;
      for (auto [a, b] : parse_domain(d.get<std::string>())) sides.push_back({a, b});
      return Box(std::move(sides));
    }
    try {
      return box_from_json(d);
    } catch (const std::exception& e) {
      throw ConfigError(std::string("config: bad domain: ") + e.what());
    }
  }
  return std::nullopt;
}

std::vector<Box> resolve_partition(const Flags& f, const Json& cfg, const Box& domain) {
  std::vector<int> counts;
  if (f.split) {
    for (const std::string& s : split_on(*f.split, ',')) counts.push_back(static_cast<int>(to_double(s, "--split")));
  } else if (cfg.contains("split")) {
    const Json& s = cfg.at("split");
    if (s.is_number_integer()) {
      counts.push_back(s.get<int>());
    } else {
      counts = from_config<std::vector<int>>(cfg, "split").value();
    }
  } else if (cfg.contains("partition")) {
    std::vector<Box> parts;
    try {
      for (const Json& b : cfg.at("partition")) parts.push_back(box_from_json(b));
    } catch (const nlohmann::json::exception& e) {
      throw ConfigError(std::string("config: bad partition: ") + e.what());
    }
    validate_partition(domain, parts);
    return parts;
  } else {
    return {};
  }
  if (counts.size() == 1 && domain.dim() > 1) counts.assign(static_cast<std::size_t>(domain.dim()), counts[0]);
  if (static_cast<int>(counts.size()) != domain.dim()) throw ConfigError("--split needs one count per dimension");
  for (int k : counts) {
    if (k < 1) throw ConfigError("--split counts must be >= 1");
  }
  return equal_split(domain, counts);
}

std::string known_scenarios() {
  std::string s;
  for (const std::string& n : scenario_names()) s += (s.empty() ? "" : ", ") + n;
  return s;
}

const Scenario& require_scenario(const std::string& name) {
  const Scenario* s = find_scenario(name);
  if (s == nullptr) throw ConfigError("unknown scenario '" + name + "'; valid names: " + known_scenarios());
  return *s;
}

struct SimulatorSpec {
  std::string description;
  BatchFn fn;
  const Scenario* scenario = nullptr;
  Json info = Json::object();
};

SimulatorSpec parse_simulator(const std::string& spec, const std::optional<Box>& domain, double nu) {
  const auto colon = spec.find(':');
  const std::string kind = spec.substr(0, colon);
  const std::string arg = colon == std::string::npos ? "" : spec.substr(colon + 1);
  SimulatorSpec out;
  out.description = spec;
  if (kind == "builtin") {
    const Scenario& s = require_scenario(arg);
    out.fn = pointwise(s.null_fn);
    out.scenario = &s;
    out.info = Json{{"kind", "builtin"}, {"scenario", s.key()}};
    return out;
  }
  if (kind == "surrogate") {
    if (!domain) throw ConfigError("a surrogate simulator needs --domain");
    const Dataset runs = load_dataset(arg, *domain);
    if (runs.size() < 2) throw DomainError(arg + ": a surrogate needs at least 2 simulator runs");
    const Surrogate sur = runs.size() >= 3 ? build_surrogate(runs, nu) : surrogate_with_theta(runs, nu, 1.0);
    out.fn = surrogate_simulator(sur);
    out.info = Json{{"kind", "surrogate"},
                    {"path", arg},
                    {"runs", runs.size()},
                    {"lambda", 0.0},
                    {"nu", nu},
                    {"theta", sur.theta},
                    {"theta_rule", "leave-one-out over the theta grid"}};
    return out;
  }
  throw ConfigError("--simulator must be builtin:<scenario> or surrogate:<path>, got '" + spec + "'");
}

std::string out_dir(const Flags& f, const Json& cfg) { return resolve(f.out, cfg, "out", std::string("fmmt_out")); }

std::string join(const std::string& dir, const std::string& name) { return (fs::path(dir) / name).string(); }

std::string fmt(double v) {
  std::ostringstream os;
  os << std::setprecision(6) << v;
  return os.str();
}

void print_summary(std::ostream& out, const std::optional<TestReport>& global, const std::optional<SubdomainReport>& sub) {
  if (global) {
    out << "global: T=" << fmt(global->statistic) << " p=" << fmt(global->p_value) << " sigma_hat=" << fmt(global->sigma_hat)
        << " k_max=" << global->k_max << '\n';
  }
  if (sub) {
    for (std::size_t i = 0; i < sub->reports.size(); ++i) {
      out << "subdomain " << (i + 1) << ' ' << sub->reports[i].domain.to_string() << ": T=" << fmt(sub->reports[i].statistic)
          << " p=" << fmt(sub->reports[i].p_value) << " bonferroni_p=" << fmt(sub->bonferroni_adjusted_p[i])
          << (sub->rejected_ier[i] ? " rejected" : "") << '\n';
    }
  }
}

std::string all_coefficients(const std::optional<TestReport>& global, const std::optional<SubdomainReport>& sub) {
  std::string csv;
  if (global) csv = coefficient_table(*global, "global");
  if (sub) {
    for (std::size_t i = 0; i < sub->reports.size(); ++i) {
      std::string t = coefficient_table(sub->reports[i], "subdomain_" + std::to_string(i + 1));
      if (!csv.empty()) t.erase(0, t.find('\n') + 1);
      csv += t;
    }
  }
  return csv;
}

Json effective_test_config(const TestConfig& tc, const Box& domain, const std::vector<Box>& partition, long long n) {
  Json j = to_json(tc);
  const int kmax = tc.resolved_kmax(n);
  j["k_max"] = kmax;
  j["quad_points_per_dim"] = tc.resolved_quad(kmax);
  j["domain"] = to_json(domain);
  Json parts = Json::array();
  for (const Box& b : partition) parts.push_back(to_json(b));
  j["partition"] = parts;
  return j;
}

int cmd_test(const Flags& f, std::ostream& out) {
  const Json cfg = load_config(f);
  const std::uint64_t seed = resolve_seed(f, cfg);
  const TestConfig tc = build_test_config(f, cfg, seed);
  const auto data_path = resolve(f.data, cfg, "data", std::string());
  const auto sim_spec = resolve(f.simulator, cfg, "simulator", std::string());
  if (data_path.empty()) throw ConfigError("test: --data is required");
  if (sim_spec.empty()) throw ConfigError("test: --simulator is required");

  std::optional<Box> domain = resolve_domain(f, cfg);
  const SimulatorSpec sim = parse_simulator(sim_spec, domain, tc.kernel.nu());
  if (!domain && sim.scenario != nullptr) domain = sim.scenario->domain;
  if (!domain) throw ConfigError("test: --domain is required");
  const std::vector<Box> partition = resolve_partition(f, cfg, *domain);

  const Dataset data = load_dataset(data_path, *domain);
  const FittedModel model = fit_model(data, *domain, tc);
  RunReport report;
  report.command = "test";
  report.seed = seed;
  report.config = effective_test_config(tc, *domain, partition, data.size());
  report.config["data"] = data_path;
  report.config["simulator"] = sim.info;
  report.config["n"] = data.size();
  report.extra["cv_c"] = number_to_json(model.cv_c);
  report.extra["krr_lambda"] = number_to_json(model.fit.lambda());
  report.extra["krr_edf"] = number_to_json(model.fit.edf());
  report.global = test_on_box(model, sim.fn, *domain, tc);
  if (!partition.empty()) report.subdomains = subdomain_tests(model, sim.fn, partition, tc);

  const std::string dir = out_dir(f, cfg);
  write_text_file(join(dir, "report.json"), write_report(report));
  write_text_file(join(dir, "coefficients.csv"), all_coefficients(report.global, report.subdomains));
  if (f.plots || resolve(std::optional<bool>{}, cfg, "plots", false)) {
    if (domain->dim() == 1) {
      const Interval& side = domain->side(0);
      Points grid(201, 1);
      std::vector<double> xs;
      for (int i = 0; i <= 200; ++i) {
        grid(i, 0) = side.lower + side.length() * i / 200.0;
        xs.push_back(grid(i, 0));
      }
      const Vector fit = predict_many(model.fit, grid);
      const Vector simv = sim.fn(grid);
      std::vector<Series> s{{"data", {data.points.col(0).data(), data.points.col(0).data() + data.size()},
                             {data.responses.data(), data.responses.data() + data.size()}, true},
                            {"fit", xs, {fit.data(), fit.data() + fit.size()}, false},
                            {"simulator", xs, {simv.data(), simv.data() + simv.size()}, false}};
      write_text_file(join(dir, "fit.svg"), render_svg(LineChart{"Fitted curve and simulator", "x", "y", s, std::nullopt}));
    }
    if (report.subdomains) {
      BarChart bars{"Subdomain p-values", "p", {}, {}, tc.alpha, 1.0};
      for (std::size_t i = 0; i < report.subdomains->reports.size(); ++i) {
        bars.labels.push_back(std::to_string(i + 1));
        bars.values.push_back(report.subdomains->reports[i].p_value);
      }
      write_text_file(join(dir, "subdomain_pvalues.svg"), render_svg(bars));
    }
  }
  print_summary(out, report.global, report.subdomains);
  out << "wrote " << join(dir, "report.json") << '\n';
  return kOk;
}

std::vector<Series> power_series(const PowerTable& t) {
  std::vector<Series> s;
  auto add = [&](const std::string& name, auto get) {
    Series x{name, {}, {}, false};
    for (const PowerRow& r : t.rows) {
      x.x.push_back(r.c);
      x.y.push_back(get(r));
    }
    s.push_back(std::move(x));
  };
  add("global", [](const PowerRow& r) { return r.global; });
  for (int k = 0; k < t.subdomains; ++k) {
    add("subdomain_" + std::to_string(k + 1), [k](const PowerRow& r) { return r.subdomain[static_cast<std::size_t>(k)]; });
  }
  if (t.subdomains > 0) add("bonferroni", [](const PowerRow& r) { return r.bonferroni; });
  if (t.has_eh) add("eh", [](const PowerRow& r) { return r.eh.value_or(0.0); });
  return s;
}

void write_curves(const PowerTable& t, const std::string& dir, bool svg) {
  const std::vector<Series> s = power_series(t);
  for (const Series& one : s) write_text_file(join(dir, "curve_" + one.name + ".csv"), series_csv({one}));
  if (svg) {
    write_text_file(join(dir, "power_curves.svg"),
                    render_svg(LineChart{t.scenario + " (n=" + std::to_string(t.n) + ")", "c", "rejection rate", s, t.alpha}));
  }
}

int cmd_simulate(const Flags& f, std::ostream& out) {
  const Json cfg = load_config(f);
  const std::uint64_t seed = resolve_seed(f, cfg);
  std::string name = resolve(f.scenario, cfg, "scenario", std::string());
  if (name.empty() && f.simulator && f.simulator->rfind("builtin:", 0) == 0) name = f.simulator->substr(8);
  if (name.empty()) throw ConfigError("simulate: --scenario is required; valid names: " + known_scenarios());
  const Scenario& scenario = require_scenario(name);

  StudySettings st;
  st.seed = seed;
  st.test = build_test_config(f, cfg, seed);
  st.alpha = st.test.alpha;
  st.n = resolve(f.n, cfg, "n", scenario.default_n);
  st.reps = resolve(f.reps, cfg, "reps", 1000);
  if (st.n < 5) throw ConfigError("simulate: --n must be >= 5");
  if (st.reps < 1) throw ConfigError("simulate: --reps must be >= 1");
  if (auto d = resolve(f.design, cfg, "design", std::string()); !d.empty()) {
    st.design = parse_design(d);
    if (!st.design) throw ConfigError("unknown design '" + d + "'; use uniform or truncated-normal");
  }
  if (auto sd = resolve(f.noise_sd, cfg, "noise_sd", -1.0); sd >= 0.0) st.noise_sd = sd;
  st.test.validate(st.test.resolved_kmax(st.n));

  std::vector<double> c_values = scenario.default_c_grid;
  if (f.c) {
    c_values = parse_c_list(*f.c);
  } else if (f.c_grid) {
    c_values = parse_c_list(*f.c_grid);
  } else if (cfg.contains("c")) {
    c_values = cfg.at("c").is_array() ? from_config<std::vector<double>>(cfg, "c").value()
                                      : std::vector<double>{from_config<double>(cfg, "c").value()};
  } else if (cfg.contains("c_grid")) {
    const Json& g = cfg.at("c_grid");
    c_values = g.is_string() ? parse_c_list(g.get<std::string>()) : from_config<std::vector<double>>(cfg, "c_grid").value();
  }

  const PowerTable table = run_study(scenario, c_values, st);
  const std::string dir = out_dir(f, cfg);
  write_text_file(join(dir, "power_table.csv"), format_power_table(table));
  write_curves(table, dir, f.plots || resolve(std::optional<bool>{}, cfg, "plots", false));

  RunReport report;
  report.command = "simulate";
  report.seed = seed;
  report.config = to_json(st.test);
  report.config["k_max"] = st.test.resolved_kmax(st.n);
  report.config["quad_points_per_dim"] = st.test.resolved_quad(st.test.resolved_kmax(st.n));
  report.config["scenario"] = scenario.key();
  report.config["n"] = st.n;
  report.config["reps"] = st.reps;
  report.config["design"] = design_name(table.design);
  report.config["noise_sd"] = table.noise_sd;
  Json cs = Json::array();
  for (double c : c_values) cs.push_back(c);
  report.config["c"] = cs;
  report.extra["power_table"] = "power_table.csv";
  write_text_file(join(dir, "report.json"), write_report(report));

  out << format_power_table(table);
  return kOk;
}

PowerTable parse_power_table(const std::string& text, const std::string& source) {
  PowerTable t;
  std::istringstream is(text);
  std::string line;
  std::vector<std::string> cols;
  int line_no = 0;
  while (std::getline(is, line)) {
    ++line_no;
    if (line.empty()) continue;
    if (line[0] == '#') {
      std::istringstream meta(line.substr(1));
      std::string kv;
      while (meta >> kv) {
        const auto eq = kv.find('=');
        if (eq == std::string::npos) continue;
        const std::string k = kv.substr(0, eq), v = kv.substr(eq + 1);
        if (k == "scenario") t.scenario = v;
        if (k == "n") t.n = std::stoi(v);
        if (k == "alpha") t.alpha = std::stod(v);
        if (k == "reps") t.reps = std::stoi(v);
      }
      continue;
    }
    if (cols.empty()) {
      cols = split_on(line, ',');
      if (cols.size() < 3 || cols[0] != "c" || cols[1] != "global") {
        throw ParseError(source + ":" + std::to_string(line_no) + ": expected a power-table header starting with c,global");
      }
      for (const std::string& c : cols) {
        if (c.rfind("subdomain_", 0) == 0) ++t.subdomains;
        if (c == "eh") t.has_eh = true;
      }
      continue;
    }
    const std::vector<std::string> fields = split_on(line, ',');
    if (fields.size() != cols.size()) {
      throw ParseError(source + ":" + std::to_string(line_no) + ": expected " + std::to_string(cols.size()) + " fields");
    }
    PowerRow r;
    for (std::size_t i = 0; i < cols.size(); ++i) {
      double v = 0.0;
      try {
        v = to_double(fields[i], cols[i]);
      } catch (const ConfigError&) {
        throw ParseError(source + ":" + std::to_string(line_no) + ": field '" + fields[i] + "' is not a number");
      }
      if (cols[i] == "c") r.c = v;
      else if (cols[i] == "global") r.global = v;
      else if (cols[i] == "bonferroni") r.bonferroni = v;
      else if (cols[i] == "eh") r.eh = v;
      else if (cols[i] == "failures") r.failures = static_cast<int>(v);
      else if (cols[i].rfind("subdomain_", 0) == 0) r.subdomain.push_back(v);
    }
    t.rows.push_back(std::move(r));
  }
  if (cols.empty()) throw ParseError(source + ": no power-table header found");
  return t;
}

int cmd_power_curve(const Flags& f, std::ostream& out) {
  const Json cfg = load_config(f);
  const std::string path = resolve(f.data, cfg, "data", std::string());
  if (path.empty()) throw ConfigError("power-curve: --data <power_table.csv> is required");
  std::string text;
  try {
    text = read_text_file(path);
  } catch (const std::runtime_error& e) {
    throw ParseError(e.what());
  }
  const PowerTable t = parse_power_table(text, path);
  const std::string dir = out_dir(f, cfg);
  write_curves(t, dir, true);
  out << "wrote " << power_series(t).size() << " curves to " << dir << '\n';
  return kOk;
}

int cmd_shear_layer(const Flags& f, std::ostream& out) {
  const Json cfg = load_config(f);
  const std::uint64_t seed = resolve_seed(f, cfg);
  const TestConfig tc = build_test_config(f, cfg, seed);
  const std::string dir_in = resolve(f.data, cfg, "data", default_shear_layer_dir());
  const ShearLayerBundle bundle = load_shear_layer(dir_in);
  const ShearLayerResult r = run_shear_layer(bundle, tc);

  RunReport report;
  report.command = "shear-layer";
  report.seed = seed;
  report.config = effective_test_config(tc, bundle.domain, bundle.partition, bundle.physical.size());
  report.config["data"] = dir_in;
  report.config["n"] = bundle.physical.size();
  report.config["simulator"] = Json{{"kind", "surrogate"},
                                    {"runs", bundle.simulation.size()},
                                    {"lambda", 0.0},
                                    {"nu", tc.kernel.nu()},
                                    {"theta", r.surrogate_theta},
                                    {"theta_rule", "leave-one-out over the theta grid"}};
  Json loo = Json::array();
  for (std::size_t i = 0; i < r.theta_grid.size(); ++i) {
    loo.push_back(Json{{"theta", r.theta_grid[i]}, {"loo_mse", number_to_json(r.loo_error[i])}});
  }
  report.extra["surrogate_loo"] = loo;
  report.extra["theta_sensitivity"] = Json{{"theta_min", r.theta_grid.front()},
                                           {"p_value_at_theta_min", number_to_json(r.p_theta_min)},
                                           {"theta_max", r.theta_grid.back()},
                                           {"p_value_at_theta_max", number_to_json(r.p_theta_max)}};
  report.extra["cv_c"] = number_to_json(r.cv_c);
  report.global = r.global;
  report.subdomains = r.subdomains;

  const std::string dir = out_dir(f, cfg);
  write_text_file(join(dir, "report.json"), write_report(report));
  write_text_file(join(dir, "coefficients.csv"), all_coefficients(report.global, report.subdomains));
  for (const auto& [name, content] : shear_layer_panels(r, tc.alpha, f.plots || resolve(std::optional<bool>{}, cfg, "plots", false))) {
    write_text_file(join(dir, name), content);
  }
  out << "surrogate theta=" << fmt(r.surrogate_theta) << '\n';
  print_summary(out, report.global, report.subdomains);
  out << "wrote " << join(dir, "report.json") << '\n';
  return kOk;
}

int cmd_scenarios(std::ostream& out) {
  out << "name,dim,default_n,subdomains,c_min,c_max\n";
  for (const Scenario& s : builtin_scenarios()) {
    out << s.key() << ',' << s.dim() << ',' << s.default_n << ',' << s.partition.size() << ',' << fmt(s.default_c_grid.front())
        << ',' << fmt(s.default_c_grid.back()) << '\n';
  }
  return kOk;
}

void add_common(CLI::App* app, Flags& f) {
  app->add_option("--alpha", f.alpha, "significance level");
  app->add_option("--ell", f.ell, "decay exponent (> 0.5)");
  app->add_option("--kmax", f.kmax, "maximum total frequency (default floor(sqrt(n)))");
  app->add_option("--quad", f.quad, "quadrature nodes per axis");
  app->add_option("--seed", f.seed, "random seed (fallback: FMMT_SEED)");
  app->add_option("--out", f.out, "output directory");
  app->add_option("--config", f.config, "JSON configuration file");
  app->add_flag("--plots", f.plots, "write SVG plots");
}

}  // namespace

std::vector<std::pair<double, double>> parse_domain(const std::string& s) {
  std::vector<std::pair<double, double>> out;
  for (const std::string& part : split_on(s, ':')) {
    const std::vector<std::string> ab = split_on(part, ',');
    if (ab.size() != 2) throw ConfigError("--domain expects a1,b1[:a2,b2...], got '" + s + "'");
    const double a = to_double(ab[0], "--domain"), b = to_double(ab[1], "--domain");
    if (!(a < b)) throw ConfigError("--domain: lower bound must be below upper bound in '" + part + "'");
    out.emplace_back(a, b);
  }
  return out;
}

std::vector<double> parse_c_list(const std::string& s) {
  std::vector<double> out;
  const std::vector<std::string> range = split_on(s, ':');
  if (range.size() == 3) {
    const double lo = to_double(range[0], "c grid"), hi = to_double(range[1], "c grid"), step = to_double(range[2], "c grid");
    if (!(step > 0.0) || hi < lo) throw ConfigError("c grid: need lo <= hi and step > 0");
    const auto count = static_cast<long>(std::floor((hi - lo) / step + 1e-9));
    for (long i = 0; i <= count; ++i) {
      const double c = std::round((lo + step * static_cast<double>(i)) * 1e9) / 1e9;
      out.push_back(c == 0.0 ? 0.0 : c);
    }
    return out;
  }
  if (range.size() != 1) throw ConfigError("c grid: expected lo:hi:step or a comma list, got '" + s + "'");
  for (const std::string& v : split_on(s, ',')) out.push_back(to_double(v, "c list"));
  if (out.empty()) throw ConfigError("c list is empty");
  return out;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Fourier maximum modulus test for computer-model validation", "fmmt"};
  app.set_version_flag("--version", std::string(FMMT_VERSION));
  app.require_subcommand(1);
  Flags f;

  CLI::App* test = app.add_subcommand("test", "test field data against a simulator");
  test->add_option("--data", f.data, "delimiter-separated data file (x1,...,xd,y)");
  test->add_option("--simulator", f.simulator, "builtin:<scenario> or surrogate:<path>");
  test->add_option("--domain", f.domain, "a1,b1[:a2,b2...]");
  test->add_option("--split", f.split, "equal split counts k[,k2]");
  add_common(test, f);

  CLI::App* sim = app.add_subcommand("simulate", "Monte Carlo rejection rates for a builtin scenario");
  sim->add_option("--scenario", f.scenario, "scenario name (see `fmmt scenarios`)");
  sim->add_option("--simulator", f.simulator, "builtin:<scenario> (alternative to --scenario)");
  sim->add_option("--n", f.n, "sample size");
  sim->add_option("--reps", f.reps, "replications per c (default 1000)");
  sim->add_option("--c", f.c, "modulation values c1,c2,...");
  sim->add_option("--c-grid", f.c_grid, "lo:hi:step or c1,c2,...");
  sim->add_option("--design", f.design, "uniform | truncated-normal");
  sim->add_option("--noise-sd", f.noise_sd, "noise standard deviation");
  add_common(sim, f);

  CLI::App* curve = app.add_subcommand("power-curve", "plot curves from a power table");
  curve->add_option("--data", f.data, "power_table.csv written by simulate");
  add_common(curve, f);

  CLI::App* shear = app.add_subcommand("shear-layer", "run the shear-layer case study");
  shear->add_option("--data", f.data, "bundle directory (simulation.csv, physical.csv)");
  add_common(shear, f);

  CLI::App* list = app.add_subcommand("scenarios", "list builtin scenarios");

  std::vector<std::string> rev(args.rbegin(), args.rend() - (args.empty() ? 0 : 1));
  try {
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (test->parsed()) return cmd_test(f, out);
    if (sim->parsed()) return cmd_simulate(f, out);
    if (curve->parsed()) return cmd_power_curve(f, out);
    if (shear->parsed()) return cmd_shear_layer(f, out);
    if (list->parsed()) return cmd_scenarios(out);
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
    return kData;
  } catch (const ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kData;
  } catch (const NumericalError& e) {
    err << "numerical failure: " << e.what() << '\n';
    return kNumerical;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kData;
  }
  return kUsage;
}

}  // namespace fmmt::cli
