#pragma once

#include "hrg/scalar.hpp"

#include <optional>
#include <string>
#include <vector>

namespace hrg {

struct Interval {
  Scalar lo, hi;
  bool degenerate() const { return compare(lo, hi) >= 0; }
  Scalar length() const { return hi - lo; }
  friend bool operator==(const Interval& a, const Interval& b) { return a.lo == b.lo && a.hi == b.hi; }
  std::string to_string() const;
};

// Product of closed intervals. Boundaries are null sets throughout.
class Box {
 public:
  Box() = default;
  explicit Box(std::vector<Interval> sides) : sides_(std::move(sides)) {}

  std::size_t dim() const { return sides_.size(); }
  const Interval& operator[](std::size_t i) const { return sides_[i]; }
  Interval& operator[](std::size_t i) { return sides_[i]; }
  const std::vector<Interval>& sides() const { return sides_; }

  bool degenerate() const;
  Scalar measure() const;
  // Intersection of interiors, if nonempty.
  std::optional<Box> intersect(const Box& o) const;
  bool contains(const Box& o) const;  // closed containment
  // Up to 2*dim interior-disjoint boxes covering this minus o a.e.
  std::vector<Box> subtract(const Box& o) const;

  friend bool operator==(const Box& a, const Box& b) { return a.sides_ == b.sides_; }
  std::string to_string() const;  // [0,1]x[-1,1]

 private:
  std::vector<Interval> sides_;
};

// Finite union of interior-disjoint, nondegenerate boxes of one dimension.
class BoxSet {
 public:
  BoxSet() = default;
  explicit BoxSet(std::size_t dim) : dim_(dim) {}
  // Accepts overlapping input and makes it interior-disjoint.
  static BoxSet of(std::size_t dim, const std::vector<Box>& boxes);
  static BoxSet single(const Box& b) { return of(b.dim(), {b}); }

  std::size_t dim() const { return dim_; }
  const std::vector<Box>& boxes() const { return boxes_; }
  bool is_null() const { return boxes_.empty(); }
  Scalar measure() const;

  BoxSet unite(const BoxSet& o) const;
  BoxSet intersect(const BoxSet& o) const;
  BoxSet subtract(const BoxSet& o) const;
  bool subset_ae(const BoxSet& o) const { return subtract(o).is_null(); }
  bool equal_ae(const BoxSet& o) const { return subset_ae(o) && o.subset_ae(*this); }

  // Hull of all boxes; requires a nonempty set.
  Box hull() const;
  std::string to_string() const;  // "[0,1] U [2,3]" or "{}"

 private:
  std::size_t dim_ = 1;
  std::vector<Box> boxes_;
};

}  // namespace hrg
