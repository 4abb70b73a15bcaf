#pragma once

#include <string>

#include "fmmt/box.hpp"
#include "fmmt/common.hpp"

namespace fmmt {

// Field observations (x_i, y_i).
struct Dataset {
  Points points;
  Vector responses;
  std::string source;

  Eigen::Index size() const { return points.rows(); }
  int dim() const { return static_cast<int>(points.cols()); }
};

// Throws DomainError on non-finite values, length mismatch or a point outside `domain`.
void validate_dataset(const Dataset& data, const Box& domain);

// Delimiter-separated text: header x1,...,xd,y; '#' starts a comment; comma,
// semicolon, tab or whitespace delimiters. Throws ParseError naming the line
// for malformed rows and DomainError naming the row and bound for points
// outside the domain.
Dataset load_dataset(const std::string& path, const Box& domain);
Dataset parse_dataset(const std::string& text, const Box& domain, const std::string& source = "<memory>");

}  // namespace fmmt
