#pragma once

#include <functional>
#include <span>
#include <stdexcept>
#include <string>

#include <Eigen/Core>

namespace fmmt {

// n x d, one input point per row.
using Points = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

using PointView = std::span<const double>;
using PointFn = std::function<double(PointView)>;

inline PointView row_view(const Points& pts, Eigen::Index i) {
  return {pts.data() + i * pts.cols(), static_cast<std::size_t>(pts.cols())};
}

// Invalid argument, point outside a domain, or a precondition violated.
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Factorization failure or a degenerate numerical quantity.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Inconsistent test / study configuration (bad partition, resolution too low, ...).
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Malformed input file.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace fmmt
