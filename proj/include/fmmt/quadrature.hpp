#pragma once

#include <vector>

#include "fmmt/box.hpp"
#include "fmmt/common.hpp"

namespace fmmt {

inline constexpr int kDefaultPanelOrder = 2;

struct Rule1D {
  std::vector<double> nodes;
  std::vector<double> weights;
};

// Gauss-Legendre rule with `order` nodes on [-1, 1].
Rule1D gauss_legendre(int order);

// Composite Gauss-Legendre on [a, b] with `points` nodes in total split into
// panels of `panel_order` nodes; `points` is rounded up to a multiple of it.
Rule1D composite_rule(double a, double b, int points, int panel_order = kDefaultPanelOrder);

// Tensor product of per-dimension composite rules on a box. Flat point index
// i enumerates the grid with the first dimension varying fastest.
class TensorGrid {
 public:
  TensorGrid(const Box& box, int points_per_dim, int panel_order = kDefaultPanelOrder);

  const Box& box() const { return box_; }
  int dim() const { return box_.dim(); }
  const Rule1D& axis(int m) const { return axes_[static_cast<std::size_t>(m)]; }
  int points_per_dim() const { return static_cast<int>(axes_.front().nodes.size()); }
  Eigen::Index size() const { return size_; }

  // All nodes as rows of an (size x dim) matrix.
  Points points() const;
  // Product weights in flat order.
  Vector weights() const;

  // Evaluates f at every node (flat order).
  Vector evaluate(const PointFn& f) const;

  // Integral of f over the box.
  double integrate(const PointFn& f) const;

 private:
  Box box_;
  std::vector<Rule1D> axes_;
  Eigen::Index size_;
};

}  // namespace fmmt
