#include "fmmt/dataset.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <vector>

namespace fmmt {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split_fields(std::string line) {
  for (char& ch : line) {
    if (ch == ',' || ch == ';' || ch == '\t') ch = ' ';
  }
  std::istringstream in(line);
  std::vector<std::string> fields;
  for (std::string f; in >> f;) fields.push_back(f);
  return fields;
}

bool parse_double(const std::string& s, double& value) {
  const char* first = s.data();
  const char* last = s.data() + s.size();
  if (first != last && *first == '+') ++first;
  const auto res = std::from_chars(first, last, value);
  return res.ec == std::errc() && res.ptr == last;
}

}  // namespace

void validate_dataset(const Dataset& data, const Box& domain) {
  if (data.points.rows() != data.responses.size()) throw DomainError("dataset: point/response count mismatch");
  if (data.points.rows() > 0 && data.points.cols() != domain.dim()) {
    throw DomainError("dataset: " + std::to_string(data.points.cols()) + " input columns but the domain is " +
                      std::to_string(domain.dim()) + "-dimensional");
  }
  for (Eigen::Index i = 0; i < data.points.rows(); ++i) {
    if (!std::isfinite(data.responses[i])) throw DomainError("dataset: row " + std::to_string(i + 1) + " has a non-finite response");
    for (int m = 0; m < domain.dim(); ++m) {
      const double x = data.points(i, m);
      if (!std::isfinite(x)) throw DomainError("dataset: row " + std::to_string(i + 1) + " has a non-finite input");
      const Interval& s = domain.side(m);
      const double tol = 1e-12 * std::max(1.0, s.length());
      if (x < s.lower - tol) {
        throw DomainError("dataset: row " + std::to_string(i + 1) + " x" + std::to_string(m + 1) + "=" +
                          std::to_string(x) + " is below the lower bound " + std::to_string(s.lower));
      }
      if (x > s.upper + tol) {
        throw DomainError("dataset: row " + std::to_string(i + 1) + " x" + std::to_string(m + 1) + "=" +
                          std::to_string(x) + " is above the upper bound " + std::to_string(s.upper));
      }
    }
  }
}

Dataset parse_dataset(const std::string& text, const Box& domain, const std::string& source) {
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  bool header_seen = false;
  std::size_t width = 0;
  std::vector<std::vector<double>> rows;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const std::vector<std::string> fields = split_fields(line);
    if (!header_seen) {
      header_seen = true;
      double probe = 0.0;
      if (!parse_double(fields.front(), probe)) {
        width = fields.size();
        if (width < 2) throw ParseError(source + ":" + std::to_string(line_no) + ": header needs x1,...,xd,y");
        continue;
      }
      width = fields.size();
    }
    if (fields.size() != width) {
      throw ParseError(source + ":" + std::to_string(line_no) + ": expected " + std::to_string(width) +
                       " fields, found " + std::to_string(fields.size()));
    }
    std::vector<double> row(width);
    for (std::size_t c = 0; c < width; ++c) {
      if (!parse_double(fields[c], row[c])) {
        throw ParseError(source + ":" + std::to_string(line_no) + ": field " + std::to_string(c + 1) + " '" +
                         fields[c] + "' is not a number");
      }
      if (!std::isfinite(row[c])) {
        throw ParseError(source + ":" + std::to_string(line_no) + ": field " + std::to_string(c + 1) + " is not finite");
      }
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw ParseError(source + ": no data rows");
  const auto d = static_cast<Eigen::Index>(width - 1);
  Dataset data;
  data.source = source;
  data.points.resize(static_cast<Eigen::Index>(rows.size()), d);
  data.responses.resize(static_cast<Eigen::Index>(rows.size()));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (Eigen::Index m = 0; m < d; ++m) data.points(static_cast<Eigen::Index>(i), m) = rows[i][static_cast<std::size_t>(m)];
    data.responses[static_cast<Eigen::Index>(i)] = rows[i].back();
  }
  validate_dataset(data, domain);
  return data;
}

Dataset load_dataset(const std::string& path, const Box& domain) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open data file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_dataset(buf.str(), domain, path);
}

}  // namespace fmmt
