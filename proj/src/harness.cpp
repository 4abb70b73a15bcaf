#include "fmmt/harness.hpp"

#include <bit>
#include <cstdio>
#include <random>
#include <sstream>

#include "fmmt/baselines.hpp"

namespace fmmt {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

constexpr std::uint64_t kDesignStream = 1;
constexpr std::uint64_t kNoiseStream = 2;
constexpr std::uint64_t kCvStream = 3;

int resolved_n(const Scenario& s, const StudySettings& st) { return st.n > 0 ? st.n : s.default_n; }

std::string fixed6(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

}  // namespace

std::uint64_t derive_seed(std::uint64_t parent, std::uint64_t a, std::uint64_t b) {
  return splitmix64(splitmix64(splitmix64(parent) ^ a) ^ splitmix64(b ^ 0xD1B54A32D192ED03ULL));
}

std::uint64_t c_key(double c) { return std::bit_cast<std::uint64_t>(c == 0.0 ? 0.0 : c); }

Dataset simulate_dataset(const Scenario& scenario, double c, int n, Design design, double noise_sd, std::uint64_t seed,
                         int rep) {
  const std::uint64_t child = derive_seed(seed, c_key(c), static_cast<std::uint64_t>(rep));
  Dataset data;
  data.points = sample_design(design, n, scenario.domain, derive_seed(child, kDesignStream));
  data.responses.resize(n);
  std::mt19937_64 rng(derive_seed(child, kNoiseStream));
  std::normal_distribution<double> noise(0.0, 1.0);
  for (int i = 0; i < n; ++i) {
    data.responses[i] = scenario.alt_fn(row_view(data.points, i), c) + noise_sd * noise(rng);
  }
  data.source = scenario.key() + " c=" + fixed6(c) + " rep=" + std::to_string(rep);
  return data;
}

ReplicationOutcome run_replication(const Scenario& scenario, double c, int rep, const StudySettings& settings,
                                   double eh_critical) {
  const int n = resolved_n(scenario, settings);
  const Design design = settings.design.value_or(scenario.design);
  const double sd = settings.noise_sd.value_or(scenario.noise_sd);
  const bool with_eh = settings.run_eh.value_or(scenario.dim() == 1);
  const Dataset data = simulate_dataset(scenario, c, n, design, sd, settings.seed, rep);

  TestConfig cfg = settings.test;
  cfg.alpha = settings.alpha;
  cfg.seed = derive_seed(derive_seed(settings.seed, c_key(c), static_cast<std::uint64_t>(rep)), kCvStream);

  ReplicationOutcome out;
  const BatchFn simulator = pointwise(scenario.null_fn);
  try {
    const FittedModel model = fit_model(data, scenario.domain, cfg);
    out.global = test_on_box(model, simulator, scenario.domain, cfg).p_value <= settings.alpha;
    if (settings.run_subdomains) {
      const SubdomainReport sub = subdomain_tests(model, simulator, scenario.partition, cfg);
      out.subdomain = sub.rejected_ier;
      for (bool r : sub.rejected_fwer) out.bonferroni = out.bonferroni || r;
    }
  } catch (const NumericalError&) {
    out.failed = true;
    out.subdomain.assign(settings.run_subdomains ? scenario.partition.size() : 0, false);
  }
  if (with_eh) {
    Vector x = data.points.col(0);
    try {
      out.eh = eh_test_with_critical(x, data.responses, [&](double t) { return scenario.null_fn(PointView(&t, 1)); },
                                     eh_critical)
                   .reject;
    } catch (const NumericalError&) {
      out.eh = false;
    }
  }
  return out;
}

PowerTable run_study(const Scenario& scenario, const std::vector<double>& c_grid, const StudySettings& settings) {
  if (settings.reps < 1) throw ConfigError("run_study: reps must be >= 1");
  if (c_grid.empty()) throw ConfigError("run_study: empty c grid");
  if (settings.run_subdomains) validate_partition(scenario.domain, scenario.partition);
  const bool with_eh = settings.run_eh.value_or(scenario.dim() == 1);
  if (with_eh && scenario.dim() != 1) throw ConfigError("run_study: the order-selection baseline is 1-D only");

  PowerTable table;
  table.scenario = scenario.name;
  table.n = resolved_n(scenario, settings);
  table.alpha = settings.alpha;
  table.reps = settings.reps;
  table.seed = settings.seed;
  table.design = settings.design.value_or(scenario.design);
  table.noise_sd = settings.noise_sd.value_or(scenario.noise_sd);
  table.subdomains = settings.run_subdomains ? static_cast<int>(scenario.partition.size()) : 0;
  table.has_eh = with_eh;

  const double eh_critical = with_eh ? eh_critical_value(settings.alpha) : 0.0;
  const auto reps = static_cast<std::ptrdiff_t>(settings.reps);
  const auto jobs = static_cast<std::ptrdiff_t>(c_grid.size()) * reps;
  std::vector<ReplicationOutcome> outcomes(static_cast<std::size_t>(jobs));

  if (settings.parallel) {
#pragma omp parallel for schedule(dynamic, 1)
    for (std::ptrdiff_t job = 0; job < jobs; ++job) {
      const double c = c_grid[static_cast<std::size_t>(job / reps)];
      outcomes[static_cast<std::size_t>(job)] = run_replication(scenario, c, static_cast<int>(job % reps), settings, eh_critical);
    }
  } else {
    for (std::ptrdiff_t job = 0; job < jobs; ++job) {
      const double c = c_grid[static_cast<std::size_t>(job / reps)];
      outcomes[static_cast<std::size_t>(job)] = run_replication(scenario, c, static_cast<int>(job % reps), settings, eh_critical);
    }
  }

  for (std::size_t ci = 0; ci < c_grid.size(); ++ci) {
    PowerRow row;
    row.c = c_grid[ci];
    std::vector<long> sub(static_cast<std::size_t>(table.subdomains), 0);
    long global = 0, bonf = 0, eh = 0;
    for (std::ptrdiff_t r = 0; r < reps; ++r) {
      const ReplicationOutcome& o = outcomes[ci * static_cast<std::size_t>(reps) + static_cast<std::size_t>(r)];
      global += o.global;
      bonf += o.bonferroni;
      eh += o.eh;
      row.failures += o.failed;
      for (std::size_t s = 0; s < sub.size() && s < o.subdomain.size(); ++s) sub[s] += o.subdomain[s];
    }
    const auto denom = static_cast<double>(reps);
    row.global = static_cast<double>(global) / denom;
    row.bonferroni = static_cast<double>(bonf) / denom;
    for (long s : sub) row.subdomain.push_back(static_cast<double>(s) / denom);
    if (with_eh) row.eh = static_cast<double>(eh) / denom;
    table.rows.push_back(std::move(row));
  }
  return table;
}

std::string format_power_table(const PowerTable& t) {
  std::ostringstream os;
  os << "# scenario=" << t.scenario << " n=" << t.n << " alpha=" << fixed6(t.alpha) << " reps=" << t.reps
     << " seed=" << t.seed << " design=" << design_name(t.design) << " noise_sd=" << fixed6(t.noise_sd) << '\n';
  os << "c,global";
  for (int s = 0; s < t.subdomains; ++s) os << ",subdomain_" << (s + 1);
  if (t.subdomains > 0) os << ",bonferroni";
  if (t.has_eh) os << ",eh";
  os << ",failures\n";
  for (const PowerRow& r : t.rows) {
    os << fixed6(r.c) << ',' << fixed6(r.global);
    for (double v : r.subdomain) os << ',' << fixed6(v);
    if (t.subdomains > 0) os << ',' << fixed6(r.bonferroni);
    if (t.has_eh) os << ',' << fixed6(r.eh.value_or(0.0));
    os << ',' << r.failures << '\n';
  }
  return os.str();
}

}  // namespace fmmt
