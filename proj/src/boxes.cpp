#include "hrg/boxes.hpp"

#include <stdexcept>

namespace hrg {

std::string Interval::to_string() const { return "[" + lo.to_string() + "," + hi.to_string() + "]"; }

bool Box::degenerate() const {
  for (auto& s : sides_)
    if (s.degenerate()) return true;
  return false;
}

Scalar Box::measure() const {
  if (degenerate()) return Scalar();
  Scalar m(1);
  for (auto& s : sides_) m *= s.length();
  return m;
}

std::optional<Box> Box::intersect(const Box& o) const {
  if (o.dim() != dim()) throw std::invalid_argument("box dimension mismatch");
  std::vector<Interval> out;
  for (std::size_t i = 0; i < dim(); ++i) {
    Interval iv{max(sides_[i].lo, o.sides_[i].lo), min(sides_[i].hi, o.sides_[i].hi)};
    if (iv.degenerate()) return std::nullopt;
    out.push_back(std::move(iv));
  }
  return Box(std::move(out));
}

bool Box::contains(const Box& o) const {
  for (std::size_t i = 0; i < dim(); ++i)
    if (sides_[i].lo > o.sides_[i].lo || sides_[i].hi < o.sides_[i].hi) return false;
  return true;
}

std::vector<Box> Box::subtract(const Box& o) const {
  auto cut = intersect(o);
  if (!cut) return {*this};
  std::vector<Box> out;
  Box rest = *this;
  // Peel off slabs below and above the cut, one coordinate at a time.
  for (std::size_t i = 0; i < dim(); ++i) {
    Box below = rest, above = rest;
    below.sides_[i].hi = (*cut)[i].lo;
    above.sides_[i].lo = (*cut)[i].hi;
    if (!below.degenerate()) out.push_back(below);
    if (!above.degenerate()) out.push_back(above);
    rest.sides_[i] = (*cut)[i];
  }
  return out;
}

std::string Box::to_string() const {
  std::string s;
  for (std::size_t i = 0; i < dim(); ++i) s += (i ? "x" : "") + sides_[i].to_string();
  return s;
}

BoxSet BoxSet::of(std::size_t dim, const std::vector<Box>& boxes) {
  BoxSet out(dim);
  for (auto& b : boxes) {
    if (b.dim() != dim) throw std::invalid_argument("box dimension mismatch");
    if (b.degenerate()) continue;
    std::vector<Box> pieces{b};
    for (auto& existing : out.boxes_) {
      std::vector<Box> next;
      for (auto& p : pieces)
        for (auto& q : p.subtract(existing)) next.push_back(std::move(q));
      pieces = std::move(next);
      if (pieces.empty()) break;
    }
    for (auto& p : pieces) out.boxes_.push_back(std::move(p));
  }
  return out;
}

Scalar BoxSet::measure() const {
  Scalar m;
  for (auto& b : boxes_) m += b.measure();
  return m;
}

BoxSet BoxSet::unite(const BoxSet& o) const {
  std::vector<Box> all = boxes_;
  all.insert(all.end(), o.boxes_.begin(), o.boxes_.end());
  return of(dim_, all);
}

BoxSet BoxSet::intersect(const BoxSet& o) const {
  BoxSet out(dim_);
  for (auto& a : boxes_)
    for (auto& b : o.boxes_)
      if (auto c = a.intersect(b)) out.boxes_.push_back(std::move(*c));
  return out;
}

BoxSet BoxSet::subtract(const BoxSet& o) const {
  BoxSet out(dim_);
  for (auto& a : boxes_) {
    std::vector<Box> pieces{a};
    for (auto& b : o.boxes_) {
      std::vector<Box> next;
      for (auto& p : pieces)
        for (auto& q : p.subtract(b)) next.push_back(std::move(q));
      pieces = std::move(next);
      if (pieces.empty()) break;
    }
    for (auto& p : pieces) out.boxes_.push_back(std::move(p));
  }
  return out;
}

Box BoxSet::hull() const {
  if (boxes_.empty()) throw std::logic_error("hull of an empty box set");
  Box h = boxes_[0];
  for (auto& b : boxes_)
    for (std::size_t i = 0; i < dim_; ++i) {
      h[i].lo = min(h[i].lo, b[i].lo);
      h[i].hi = max(h[i].hi, b[i].hi);
    }
  return h;
}

std::string BoxSet::to_string() const {
  if (boxes_.empty()) return "{}";
  std::string s;
  for (std::size_t i = 0; i < boxes_.size(); ++i) s += (i ? " U " : "") + boxes_[i].to_string();
  return s;
}

}  // namespace hrg
