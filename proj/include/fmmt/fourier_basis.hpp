#pragma once

#include <string>
#include <vector>

#include "fmmt/box.hpp"
#include "fmmt/common.hpp"
#include "fmmt/quadrature.hpp"

namespace fmmt {

enum class Phase { kConstant = 0, kCosine = 1, kSine = 2 };

struct AxisTerm {
  int frequency;  // k_m >= 0
  Phase phase;    // kConstant iff frequency == 0
  friend auto operator<=>(const AxisTerm&, const AxisTerm&) = default;
};

// One tensor-product Fourier element on a box.
struct BasisIndex {
  std::vector<AxisTerm> per_dim;
  int total_frequency = 0;   // sum of per-dimension frequencies
  double decay_weight = 1.0; // rho = 1 / log(k + 2)^ell

  int dim() const { return static_cast<int>(per_dim.size()); }
  // e.g. "cos1" or "const*sin2"
  std::string label() const;
  friend bool operator==(const BasisIndex&, const BasisIndex&) = default;
};

// Row of an axis table holding the 1-D element (k, phase): 0 = constant,
// 2k-1 = cosine k, 2k = sine k.
inline int axis_slot(const AxisTerm& t) {
  return t.phase == Phase::kConstant ? 0 : 2 * t.frequency - (t.phase == Phase::kCosine ? 1 : 0);
}

// Affinely rescaled orthonormal 1-D element on `side`.
double axis_eval(const AxisTerm& term, double x, const Interval& side);

// Product element; throws DomainError when x is outside the box.
double basis_eval(const BasisIndex& idx, PointView x, const Box& box);

// Zero extension of the box's element to the whole space.
double basis_eval_extended(const BasisIndex& idx, PointView x, const Box& box);

// rho = 1 / [ln(k + 2)]^ell, ell > 0.5.
double decay_weight(int k, double ell);

// All elements with total frequency <= k_max, ordered by total frequency and
// then lexicographically in (k_1, phase_1, k_2, phase_2, ...), with
// constant < cosine < sine.
std::vector<BasisIndex> enumerate_basis(int k_max, int dim, double ell = 0.7);

// floor(sqrt(n)), at least 1.
int default_kmax(long long n);

// Values of every 1-D element with frequency <= k_max at the nodes of `axis`:
// (2 k_max + 1) x nodes, rows indexed by axis_slot.
Matrix axis_table(const Rule1D& axis, const Interval& side, int k_max);

}  // namespace fmmt
