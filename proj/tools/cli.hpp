#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace fmmt::cli {

enum ExitCode { kOk = 0, kUsage = 1, kData = 2, kNumerical = 3 };

// Runs the command line `args` (args[0] is the program name). Diagnostics go
// to `err`, summaries to `out`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// "a1,b1[:a2,b2...]"
std::vector<std::pair<double, double>> parse_domain(const std::string& s);
// "lo:hi:step" or "c1,c2,..."
std::vector<double> parse_c_list(const std::string& s);

}  // namespace fmmt::cli
