#pragma once

#include "hrg/kgraph.hpp"

#include <set>
#include <string>
#include <vector>

namespace hrg {

class DepthError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Finite union of cylinders Z(mu) = mu Λ^{<=inf}, kept antichain-reduced.
class CylinderSet {
 public:
  CylinderSet() = default;
  static CylinderSet of(const KGraph& g, std::vector<Path> terms);
  static CylinderSet vertex(const KGraph& g, VertexId v) { return of(g, {g.vertex_path(v)}); }
  static CylinderSet edge(const KGraph& g, EdgeId e) { return of(g, {g.edge_path(e)}); }

  const std::vector<Path>& terms() const { return terms_; }
  // Every cylinder contains at least one boundary path.
  bool empty() const { return terms_.empty(); }
  friend bool operator==(const CylinderSet& a, const CylinderSet& b) { return a.terms_ == b.terms_; }

  std::string to_string(const KGraph& g) const;

 private:
  std::vector<Path> terms_;  // sorted
};

CylinderSet cyl_union(const KGraph& g, const CylinderSet& a, const CylinderSet& b);
CylinderSet cyl_intersect(const KGraph& g, const CylinderSet& a, const CylinderSet& b);
// a ⊆ b as sets of boundary paths.
bool cyl_subset(const KGraph& g, const CylinderSet& a, const CylinderSet& b);
bool cyl_equal_ae(const KGraph& g, const CylinderSet& a, const CylinderSet& b);
// Same decision through truncation atoms; used as a cross-check.
bool cyl_equal_by_atoms(const KGraph& g, const CylinderSet& a, const CylinderSet& b, unsigned depth_cap = 16);

// σ^m(Z(prefix)) for m <= d(prefix).
CylinderSet shift(const KGraph& g, const Path& prefix, const Degree& m);
// mu A for A ⊆ Z(s(mu)).
CylinderSet prepend(const KGraph& g, const Path& mu, const CylinderSet& a);

// Atom(pi, D) = { x in Z(pi) : d(x)_i = d(pi)_i whenever d(pi)_i < D_i }.
// For fixed D the nonempty atoms with d(pi) <= D partition the boundary path
// space.
bool atom_nonempty(const KGraph& g, const Path& pi, const Degree& D);

// A set of boundary paths written as a union of nonempty atoms at a common
// degree. Closed under union, intersection, difference, and prefixing.
class AtomSet {
 public:
  AtomSet() = default;
  AtomSet(Degree D, std::set<Path> atoms) : D_(std::move(D)), atoms_(std::move(atoms)) {}
  static AtomSet from_cylinders(const KGraph& g, const CylinderSet& c, unsigned depth_cap = 16);

  const Degree& degree() const { return D_; }
  const std::set<Path>& atoms() const { return atoms_; }
  bool empty() const { return atoms_.empty(); }

  AtomSet refined(const KGraph& g, const Degree& D) const;
  std::string to_string(const KGraph& g) const;

 private:
  Degree D_;
  std::set<Path> atoms_;
};

AtomSet atom_union(const KGraph& g, const AtomSet& a, const AtomSet& b);
AtomSet atom_intersect(const KGraph& g, const AtomSet& a, const AtomSet& b);
AtomSet atom_subtract(const KGraph& g, const AtomSet& a, const AtomSet& b);
bool atom_equal(const KGraph& g, const AtomSet& a, const AtomSet& b);
// mu A for A ⊆ Z(s(mu)); atoms elsewhere are ignored.
AtomSet atom_prepend(const KGraph& g, const Path& mu, const AtomSet& a);

}  // namespace hrg
