#pragma once

#include <string>
#include <vector>

#include "fmmt/common.hpp"

namespace fmmt {

struct Interval {
  double lower;
  double upper;
  double length() const { return upper - lower; }
  friend bool operator==(const Interval&, const Interval&) = default;
};

// Axis-aligned box with positive volume.
class Box {
 public:
  explicit Box(std::vector<Interval> sides);
  static Box unit(int dim);

  int dim() const { return static_cast<int>(sides_.size()); }
  const Interval& side(int m) const { return sides_[static_cast<std::size_t>(m)]; }
  const std::vector<Interval>& sides() const { return sides_; }
  double volume() const;

  // Closed-box membership with a small relative tolerance at the faces.
  bool contains(PointView x) const;

  // "[a,b]x[c,d]"
  std::string to_string() const;

  friend bool operator==(const Box&, const Box&) = default;

 private:
  std::vector<Interval> sides_;
};

// Splits each side into `counts[m]` equal pieces; boxes are ordered with the
// first dimension varying fastest.
std::vector<Box> equal_split(const Box& box, const std::vector<int>& counts);

// The four quadrants of a 2-D box in counter-clockwise order starting at the
// upper-right one: [mid,hi]x[mid,hi], [lo,mid]x[mid,hi], [lo,mid]x[lo,mid], [mid,hi]x[lo,mid].
std::vector<Box> quadrants(const Box& box);

// Throws ConfigError unless the boxes are inside `domain`, pairwise
// non-overlapping (positive-volume intersections) and their volumes sum to
// the domain volume within 1e-9 relative.
void validate_partition(const Box& domain, const std::vector<Box>& parts);

}  // namespace fmmt
