#include "fmmt/quadrature.hpp"

#include <cmath>
#include <numbers>

namespace fmmt {

Rule1D gauss_legendre(int order) {
  if (order < 1) throw DomainError("gauss_legendre: order must be >= 1");
  Rule1D rule;
  rule.nodes.resize(static_cast<std::size_t>(order));
  rule.weights.resize(static_cast<std::size_t>(order));
  const int half = (order + 1) / 2;
  for (int i = 0; i < half; ++i) {
    // Newton iteration on P_order from the Chebyshev-like initial guess.
    double x = std::cos(std::numbers::pi * (i + 0.75) / (order + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0;
      double p1 = x;
      for (int k = 2; k <= order; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = order * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    double p0 = 1.0;
    double p1 = x;
    for (int k = 2; k <= order; ++k) {
      const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    dp = order * (x * p1 - p0) / (x * x - 1.0);
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    const auto lo = static_cast<std::size_t>(i);
    const auto hi = static_cast<std::size_t>(order - 1 - i);
    rule.nodes[lo] = -x;
    rule.nodes[hi] = x;
    rule.weights[lo] = w;
    rule.weights[hi] = w;
  }
  if (order % 2 == 1) rule.nodes[static_cast<std::size_t>(order / 2)] = 0.0;
  return rule;
}

Rule1D composite_rule(double a, double b, int points, int panel_order) {
  if (!(a < b)) throw DomainError("composite_rule: need a < b");
  if (points < 1 || panel_order < 1) throw DomainError("composite_rule: need positive resolution");
  const int panels = (points + panel_order - 1) / panel_order;
  const Rule1D base = gauss_legendre(panel_order);
  const double width = (b - a) / panels;
  Rule1D rule;
  rule.nodes.reserve(static_cast<std::size_t>(panels * panel_order));
  rule.weights.reserve(rule.nodes.capacity());
  for (int p = 0; p < panels; ++p) {
    const double left = a + width * p;
    for (int k = 0; k < panel_order; ++k) {
      rule.nodes.push_back(left + 0.5 * width * (base.nodes[static_cast<std::size_t>(k)] + 1.0));
      rule.weights.push_back(0.5 * width * base.weights[static_cast<std::size_t>(k)]);
    }
  }
  return rule;
}

TensorGrid::TensorGrid(const Box& box, int points_per_dim, int panel_order) : box_(box), size_(1) {
  for (int m = 0; m < box.dim(); ++m) {
    axes_.push_back(composite_rule(box.side(m).lower, box.side(m).upper, points_per_dim, panel_order));
    size_ *= static_cast<Eigen::Index>(axes_.back().nodes.size());
  }
}

Points TensorGrid::points() const {
  const int d = dim();
  Points out(size_, d);
  const auto q = static_cast<Eigen::Index>(axes_.front().nodes.size());
  for (Eigen::Index i = 0; i < size_; ++i) {
    Eigen::Index rest = i;
    for (int m = 0; m < d; ++m) {
      out(i, m) = axes_[static_cast<std::size_t>(m)].nodes[static_cast<std::size_t>(rest % q)];
      rest /= q;
    }
  }
  return out;
}

Vector TensorGrid::weights() const {
  const int d = dim();
  Vector out(size_);
  const auto q = static_cast<Eigen::Index>(axes_.front().nodes.size());
  for (Eigen::Index i = 0; i < size_; ++i) {
    Eigen::Index rest = i;
    double w = 1.0;
    for (int m = 0; m < d; ++m) {
      w *= axes_[static_cast<std::size_t>(m)].weights[static_cast<std::size_t>(rest % q)];
      rest /= q;
    }
    out[i] = w;
  }
  return out;
}

Vector TensorGrid::evaluate(const PointFn& f) const {
  const Points pts = points();
  Vector out(size_);
  for (Eigen::Index i = 0; i < size_; ++i) out[i] = f(row_view(pts, i));
  return out;
}

double TensorGrid::integrate(const PointFn& f) const { return evaluate(f).dot(weights()); }

}  // namespace fmmt
