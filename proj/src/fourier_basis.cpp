#include "fmmt/fourier_basis.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace fmmt {

namespace {

void append_terms(int dim, int remaining, std::vector<AxisTerm>& prefix, std::vector<std::vector<AxisTerm>>& out) {
  if (static_cast<int>(prefix.size()) == dim) {
    if (remaining == 0) out.push_back(prefix);
    return;
  }
  for (int k = 0; k <= remaining; ++k) {
    if (k == 0) {
      prefix.push_back({0, Phase::kConstant});
      append_terms(dim, remaining, prefix, out);
      prefix.pop_back();
      continue;
    }
    for (Phase ph : {Phase::kCosine, Phase::kSine}) {
      prefix.push_back({k, ph});
      append_terms(dim, remaining - k, prefix, out);
      prefix.pop_back();
    }
  }
}

const char* phase_name(Phase p) {
  switch (p) {
    case Phase::kConstant: return "const";
    case Phase::kCosine: return "cos";
    case Phase::kSine: return "sin";
  }
  return "?";
}

}  // namespace

std::string BasisIndex::label() const {
  std::string s;
  for (std::size_t m = 0; m < per_dim.size(); ++m) {
    if (m > 0) s += '*';
    s += phase_name(per_dim[m].phase);
    if (per_dim[m].phase != Phase::kConstant) s += std::to_string(per_dim[m].frequency);
  }
  return s;
}

double axis_eval(const AxisTerm& term, double x, const Interval& side) {
  const double len = side.length();
  if (term.phase == Phase::kConstant) return 1.0 / std::sqrt(len);
  const double arg = 2.0 * std::numbers::pi * term.frequency * (x - side.lower) / len;
  const double amp = std::sqrt(2.0 / len);
  return amp * (term.phase == Phase::kCosine ? std::cos(arg) : std::sin(arg));
}

double basis_eval(const BasisIndex& idx, PointView x, const Box& box) {
  if (static_cast<int>(x.size()) != box.dim() || idx.dim() != box.dim()) {
    throw DomainError("basis_eval: dimension mismatch");
  }
  if (!box.contains(x)) throw DomainError("basis_eval: point outside " + box.to_string());
  double v = 1.0;
  for (int m = 0; m < box.dim(); ++m) {
    v *= axis_eval(idx.per_dim[static_cast<std::size_t>(m)], x[static_cast<std::size_t>(m)], box.side(m));
  }
  return v;
}

double basis_eval_extended(const BasisIndex& idx, PointView x, const Box& box) {
  if (static_cast<int>(x.size()) != box.dim()) throw DomainError("basis_eval: dimension mismatch");
  for (int m = 0; m < box.dim(); ++m) {
    const double xm = x[static_cast<std::size_t>(m)];
    if (xm < box.side(m).lower || xm > box.side(m).upper) return 0.0;
  }
  return basis_eval(idx, x, box);
}

double decay_weight(int k, double ell) {
  if (k < 0) throw DomainError("decay_weight: frequency must be >= 0");
  if (!(ell > 0.5)) throw DomainError("decay_weight: exponent ell must exceed 0.5");
  return 1.0 / std::pow(std::log(k + 2.0), ell);
}

std::vector<BasisIndex> enumerate_basis(int k_max, int dim, double ell) {
  if (k_max < 0) throw DomainError("enumerate_basis: k_max must be >= 0");
  if (dim < 1) throw DomainError("enumerate_basis: dimension must be >= 1");
  std::vector<BasisIndex> out;
  for (int total = 0; total <= k_max; ++total) {
    std::vector<std::vector<AxisTerm>> terms;
    std::vector<AxisTerm> prefix;
    append_terms(dim, total, prefix, terms);
    std::sort(terms.begin(), terms.end());
    const double rho = decay_weight(total, ell);
    for (auto& t : terms) out.push_back({std::move(t), total, rho});
  }
  return out;
}

int default_kmax(long long n) {
  if (n < 1) throw DomainError("default_kmax: sample size must be >= 1");
  auto k = static_cast<long long>(std::floor(std::sqrt(static_cast<double>(n))));
  while ((k + 1) * (k + 1) <= n) ++k;
  while (k * k > n) --k;
  return static_cast<int>(std::max(1LL, k));
}

Matrix axis_table(const Rule1D& axis, const Interval& side, int k_max) {
  const auto q = static_cast<Eigen::Index>(axis.nodes.size());
  Matrix table(2 * k_max + 1, q);
  for (Eigen::Index j = 0; j < q; ++j) {
    const double x = axis.nodes[static_cast<std::size_t>(j)];
    table(0, j) = axis_eval({0, Phase::kConstant}, x, side);
    for (int k = 1; k <= k_max; ++k) {
      table(2 * k - 1, j) = axis_eval({k, Phase::kCosine}, x, side);
      table(2 * k, j) = axis_eval({k, Phase::kSine}, x, side);
    }
  }
  return table;
}

}  // namespace fmmt
