#include "fmmt/report.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace fmmt {

namespace {

std::string phase_name(Phase p) {
  switch (p) {
    case Phase::kConstant: return "const";
    case Phase::kCosine: return "cos";
    case Phase::kSine: return "sin";
  }
  return "const";
}

Phase phase_from(const std::string& s) {
  if (s == "const") return Phase::kConstant;
  if (s == "cos") return Phase::kCosine;
  if (s == "sin") return Phase::kSine;
  throw ParseError("report: unknown basis phase '" + s + "'");
}

Json basis_to_json(const BasisIndex& b) {
  Json terms = Json::array();
  for (const AxisTerm& t : b.per_dim) terms.push_back(Json::array({t.frequency, phase_name(t.phase)}));
  return Json{{"label", b.label()}, {"terms", terms}, {"total_frequency", b.total_frequency},
              {"rho", number_to_json(b.decay_weight)}};
}

BasisIndex basis_from_json(const Json& j) {
  BasisIndex b;
  for (const Json& t : j.at("terms")) b.per_dim.push_back({t.at(0).get<int>(), phase_from(t.at(1).get<std::string>())});
  b.total_frequency = j.at("total_frequency").get<int>();
  b.decay_weight = number_from_json(j.at("rho"));
  return b;
}

Json numbers(const std::vector<double>& v) {
  Json a = Json::array();
  for (double x : v) a.push_back(number_to_json(x));
  return a;
}

std::vector<double> numbers_from(const Json& j) {
  std::vector<double> v;
  for (const Json& x : j) v.push_back(number_from_json(x));
  return v;
}

}  // namespace

std::string format_full(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

Json number_to_json(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return v;
}

double number_from_json(const Json& j) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    if (s == "inf") return std::numeric_limits<double>::infinity();
    if (s == "-inf") return -std::numeric_limits<double>::infinity();
    if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
  }
  throw ParseError("report: expected a number, got " + j.dump());
}

Json to_json(const Box& box) {
  Json a = Json::array();
  for (const Interval& s : box.sides()) a.push_back(Json::array({number_to_json(s.lower), number_to_json(s.upper)}));
  return a;
}

Box box_from_json(const Json& j) {
  std::vector<Interval> sides;
  for (const Json& s : j) sides.push_back({number_from_json(s.at(0)), number_from_json(s.at(1))});
  return Box(std::move(sides));
}

Json to_json(const TestReport& r) {
  Json coeffs = Json::array();
  for (const CoefficientRecord& c : r.coefficients) {
    coeffs.push_back(Json{{"basis", basis_to_json(c.basis)},
                          {"s_hat", number_to_json(c.s_hat)},
                          {"weighted_z", number_to_json(c.weighted_z)}});
  }
  return Json{{"domain", to_json(r.domain)},
              {"statistic", number_to_json(r.statistic)},
              {"p_value", number_to_json(r.p_value)},
              {"sigma_hat", number_to_json(r.sigma_hat)},
              {"n", r.n},
              {"k_max", r.k_max},
              {"ell", number_to_json(r.ell)},
              {"quad_points_per_dim", r.quad_points_per_dim},
              {"noise_status", r.noise_status == NoiseStatus::kOk ? "ok" : "degenerate"},
              {"warnings", r.warnings},
              {"coefficients", coeffs}};
}

TestReport test_report_from_json(const Json& j) {
  TestReport r;
  r.domain = box_from_json(j.at("domain"));
  r.statistic = number_from_json(j.at("statistic"));
  r.p_value = number_from_json(j.at("p_value"));
  r.sigma_hat = number_from_json(j.at("sigma_hat"));
  r.n = j.at("n").get<long long>();
  r.k_max = j.at("k_max").get<int>();
  r.ell = number_from_json(j.at("ell"));
  r.quad_points_per_dim = j.at("quad_points_per_dim").get<int>();
  r.noise_status = j.at("noise_status").get<std::string>() == "ok" ? NoiseStatus::kOk : NoiseStatus::kDegenerate;
  r.warnings = j.at("warnings").get<std::vector<std::string>>();
  for (const Json& c : j.at("coefficients")) {
    r.coefficients.push_back(
        {basis_from_json(c.at("basis")), number_from_json(c.at("s_hat")), number_from_json(c.at("weighted_z"))});
  }
  return r;
}

Json to_json(const SubdomainReport& s) {
  Json blocks = Json::array();
  for (std::size_t i = 0; i < s.reports.size(); ++i) {
    Json b = to_json(s.reports[i]);
    b["index"] = i + 1;
    b["rejected"] = static_cast<bool>(s.rejected_ier[i]);
    blocks.push_back(std::move(b));
  }
  Json rejected_fwer = Json::array();
  for (bool b : s.rejected_fwer) rejected_fwer.push_back(b);
  return Json{{"alpha", number_to_json(s.alpha)},
              {"subdomains", blocks},
              {"bonferroni", Json{{"adjusted_p", numbers(s.bonferroni_adjusted_p)}, {"rejected", rejected_fwer}}}};
}

SubdomainReport subdomain_report_from_json(const Json& j) {
  SubdomainReport s;
  s.alpha = number_from_json(j.at("alpha"));
  for (const Json& b : j.at("subdomains")) {
    s.reports.push_back(test_report_from_json(b));
    s.rejected_ier.push_back(b.at("rejected").get<bool>());
  }
  s.bonferroni_adjusted_p = numbers_from(j.at("bonferroni").at("adjusted_p"));
  for (const Json& b : j.at("bonferroni").at("rejected")) s.rejected_fwer.push_back(b.get<bool>());
  return s;
}

Json to_json(const TestConfig& c) {
  Json j{{"alpha", number_to_json(c.alpha)},
         {"ell", number_to_json(c.ell)},
         {"k_max", c.k_max > 0 ? Json(c.k_max) : Json("auto")},
         {"quad_points_per_dim", c.quad_points_per_dim > 0 ? Json(c.quad_points_per_dim) : Json("auto")},
         {"kernel", Json{{"family", "matern"}, {"nu", number_to_json(c.kernel.nu())}, {"theta", number_to_json(c.kernel.theta())}}},
         {"cv_folds", c.cv_folds},
         {"c_grid", numbers(c.c_grid)}};
  j["lambda"] = c.lambda ? number_to_json(*c.lambda) : Json("cross-validated");
  return j;
}

std::string write_report(const RunReport& r) {
  Json j{{"tool", "fmmt"}, {"version", FMMT_VERSION}, {"command", r.command}, {"seed", r.seed}, {"config", r.config}};
  if (r.global) j["global"] = to_json(*r.global);
  if (r.subdomains) j["subdomain_tests"] = to_json(*r.subdomains);
  if (!r.extra.empty()) j["extra"] = r.extra;
  return j.dump(2) + "\n";
}

RunReport parse_report(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("report: ") + e.what());
  }
  RunReport r;
  r.command = j.at("command").get<std::string>();
  r.seed = j.at("seed").get<std::uint64_t>();
  r.config = j.at("config");
  if (j.contains("global")) r.global = test_report_from_json(j.at("global"));
  if (j.contains("subdomain_tests")) r.subdomains = subdomain_report_from_json(j.at("subdomain_tests"));
  if (j.contains("extra")) r.extra = j.at("extra");
  return r;
}

std::string coefficient_table(const TestReport& report, const std::string& region) {
  std::ostringstream os;
  if (!region.empty()) os << "region,";
  os << "index,label,total_frequency,rho,s_hat,weighted_z\n";
  for (std::size_t i = 0; i < report.coefficients.size(); ++i) {
    const CoefficientRecord& c = report.coefficients[i];
    if (!region.empty()) os << region << ',';
    os << (i + 1) << ',' << c.basis.label() << ',' << c.basis.total_frequency << ',' << format_full(c.basis.decay_weight)
       << ',' << format_full(c.s_hat) << ',' << format_full(c.weighted_z) << '\n';
  }
  return os.str();
}

void write_text_file(const std::string& path, const std::string& content) {
  const std::filesystem::path p(path);
  if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
  std::ofstream out(p, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  out << content;
  if (!out) throw std::runtime_error("write to " + path + " failed");
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

}  // namespace fmmt
