#include "fmmt/box.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace fmmt {

Box::Box(std::vector<Interval> sides) : sides_(std::move(sides)) {
  if (sides_.empty()) throw DomainError("Box: need at least one dimension");
  for (const Interval& s : sides_) {
    if (!std::isfinite(s.lower) || !std::isfinite(s.upper) || !(s.lower < s.upper)) {
      throw DomainError("Box: every side needs finite bounds with lower < upper");
    }
  }
}

Box Box::unit(int dim) { return Box(std::vector<Interval>(static_cast<std::size_t>(dim), {0.0, 1.0})); }

double Box::volume() const {
  double v = 1.0;
  for (const Interval& s : sides_) v *= s.length();
  return v;
}

bool Box::contains(PointView x) const {
  if (x.size() != sides_.size()) return false;
  for (std::size_t m = 0; m < sides_.size(); ++m) {
    const double tol = 1e-12 * std::max(1.0, sides_[m].length());
    if (!(x[m] >= sides_[m].lower - tol && x[m] <= sides_[m].upper + tol)) return false;
  }
  return true;
}

std::string Box::to_string() const {
  std::ostringstream os;
  os.precision(17);
  for (std::size_t m = 0; m < sides_.size(); ++m) {
    if (m > 0) os << 'x';
    os << '[' << sides_[m].lower << ',' << sides_[m].upper << ']';
  }
  return os.str();
}

std::vector<Box> equal_split(const Box& box, const std::vector<int>& counts) {
  if (static_cast<int>(counts.size()) != box.dim()) {
    throw ConfigError("equal_split: need one split count per dimension");
  }
  std::size_t total = 1;
  for (int c : counts) {
    if (c < 1) throw ConfigError("equal_split: split counts must be >= 1");
    total *= static_cast<std::size_t>(c);
  }
  std::vector<Box> out;
  out.reserve(total);
  std::vector<int> idx(counts.size(), 0);
  for (std::size_t k = 0; k < total; ++k) {
    std::vector<Interval> sides;
    for (int m = 0; m < box.dim(); ++m) {
      const Interval& s = box.side(m);
      const double step = s.length() / counts[static_cast<std::size_t>(m)];
      const int i = idx[static_cast<std::size_t>(m)];
      const double lo = s.lower + step * i;
      const double hi = (i + 1 == counts[static_cast<std::size_t>(m)]) ? s.upper : s.lower + step * (i + 1);
      sides.push_back({lo, hi});
    }
    out.emplace_back(std::move(sides));
    for (std::size_t m = 0; m < idx.size(); ++m) {
      if (++idx[m] < counts[m]) break;
      idx[m] = 0;
    }
  }
  return out;
}

std::vector<Box> quadrants(const Box& box) {
  if (box.dim() != 2) throw ConfigError("quadrants: box must be two-dimensional");
  const Interval& a = box.side(0);
  const Interval& b = box.side(1);
  const double ma = 0.5 * (a.lower + a.upper);
  const double mb = 0.5 * (b.lower + b.upper);
  return {Box({{ma, a.upper}, {mb, b.upper}}), Box({{a.lower, ma}, {mb, b.upper}}),
          Box({{a.lower, ma}, {b.lower, mb}}), Box({{ma, a.upper}, {b.lower, mb}})};
}

void validate_partition(const Box& domain, const std::vector<Box>& parts) {
  if (parts.empty()) throw ConfigError("partition is empty");
  const double vol = domain.volume();
  double sum = 0.0;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    const Box& p = parts[i];
    if (p.dim() != domain.dim()) throw ConfigError("partition box " + std::to_string(i + 1) + " has the wrong dimension");
    for (int m = 0; m < p.dim(); ++m) {
      const double tol = 1e-9 * domain.side(m).length();
      if (p.side(m).lower < domain.side(m).lower - tol || p.side(m).upper > domain.side(m).upper + tol) {
        throw ConfigError("partition box " + std::to_string(i + 1) + " " + p.to_string() +
                          " leaves the domain " + domain.to_string());
      }
    }
    sum += p.volume();
    for (std::size_t j = 0; j < i; ++j) {
      double overlap = 1.0;
      for (int m = 0; m < p.dim(); ++m) {
        const double lo = std::max(p.side(m).lower, parts[j].side(m).lower);
        const double hi = std::min(p.side(m).upper, parts[j].side(m).upper);
        overlap *= std::max(0.0, hi - lo);
      }
      if (overlap > 1e-9 * vol) {
        throw ConfigError("partition boxes " + std::to_string(j + 1) + " and " + std::to_string(i + 1) +
                          " overlap");
      }
    }
  }
  if (std::abs(sum - vol) > 1e-9 * vol) {
    throw ConfigError("partition does not cover the domain (volume " + std::to_string(sum) +
                      " vs " + std::to_string(vol) + ")");
  }
}

}  // namespace fmmt
