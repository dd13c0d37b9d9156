#pragma once

#include "hrg/axioms.hpp"
#include "hrg/cylinder.hpp"

namespace hrg {

// D_v = vΛ^{≤∞}, R_μ = μΛ^{≤∞}, f_μ = prefixing by μ, under counting measure.
struct CanonicalBS {
  KGraph graph;
  unsigned depth_cap = 16;  // bound on atom refinement degrees
};

CanonicalBS canonical_bs(const KGraph& g, unsigned depth_cap = 16);

class CanonicalModel {
 public:
  using Set = AtomSet;
  explicit CanonicalModel(const CanonicalBS& bs);

  const KGraph& graph() const { return bs_.graph; }
  Set domain(VertexId v) const { return domains_[v]; }
  Set range(EdgeId e) const { return ranges_[e]; }
  Set image(EdgeId e, const Set& s) const { return atom_prepend(graph(), graph().edge_path(e), s); }
  Set intersect(const Set& a, const Set& b) const { return atom_intersect(graph(), a, b); }
  Set unite(const Set& a, const Set& b) const { return atom_union(graph(), a, b); }
  Set subtract(const Set& a, const Set& b) const { return atom_subtract(graph(), a, b); }
  bool is_null(const Set& s) const { return s.empty(); }
  std::string describe(const Set& s) const { return s.to_string(graph()); }
  std::optional<std::string> map_defect(EdgeId e) const;
  std::optional<std::string> square_defect(const Square& sq) const;

 private:
  const CanonicalBS& bs_;
  std::vector<AtomSet> domains_, ranges_;
};

// Condition (7) runs over every enumerable minimal exhaustive edge set and,
// without sources, the per-color sets.
AxiomReport check_axioms(const CanonicalBS& bs, AxiomMode mode, Execution exec = Execution::Parallel);

}  // namespace hrg
