#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "fmmt/fmmt_test.hpp"

namespace fmmt {

using Json = nlohmann::ordered_json;

// Non-finite doubles are written as the strings "inf", "-inf" and "nan";
// finite ones as JSON numbers with round-trip precision.
Json number_to_json(double v);
double number_from_json(const Json& j);

Json to_json(const Box& box);
Box box_from_json(const Json& j);
Json to_json(const TestReport& report);
TestReport test_report_from_json(const Json& j);
Json to_json(const SubdomainReport& report);
SubdomainReport subdomain_report_from_json(const Json& j);
Json to_json(const TestConfig& config);

// Top-level report of one CLI run.
struct RunReport {
  std::string command;
  std::uint64_t seed = 0;
  Json config = Json::object();    // effective configuration, defaults resolved
  std::optional<TestReport> global;
  std::optional<SubdomainReport> subdomains;
  Json extra = Json::object();     // command-specific fields
};

std::string write_report(const RunReport& report);
RunReport parse_report(const std::string& text);

// One row per basis element: index,label,total_frequency,rho,s_hat,weighted_z
// (17 significant digits). With a non-empty `region`, a leading column names it.
std::string coefficient_table(const TestReport& report, const std::string& region = "");

// Writes `content` to `path`, creating parent directories. Throws
// std::runtime_error on failure.
void write_text_file(const std::string& path, const std::string& content);
std::string read_text_file(const std::string& path);

// printf-style "%.17g".
std::string format_full(double v);

}  // namespace fmmt
