#pragma once

#include "hrg/axioms.hpp"
#include "hrg/maps.hpp"

#include <optional>
#include <string>
#include <vector>

namespace hrg {

// D_v per vertex and f_μ per edge on boxes of one dimension. R_μ is the image
// of f_μ.
struct IntervalBranchingSystem {
  KGraph graph;
  std::size_t dim = 1;
  std::vector<BoxSet> domains;            // by VertexId
  std::vector<PiecewiseMap> maps;         // by EdgeId
  std::vector<ExhaustiveSet> exhaustive;  // declared

  const BoxSet& domain(VertexId v) const { return domains.at(v); }
  BoxSet range(EdgeId e) const { return maps.at(e).image(); }
  // Throws std::invalid_argument when the sizes do not match the graph.
  void check_shape() const;
};

class IntervalModel {
 public:
  using Set = BoxSet;
  explicit IntervalModel(const IntervalBranchingSystem& bs);

  const KGraph& graph() const { return bs_.graph; }
  Set domain(VertexId v) const { return bs_.domain(v); }
  Set range(EdgeId e) const { return ranges_[e]; }
  Set image(EdgeId e, const Set& s) const { return bs_.maps[e].image_of(s); }
  Set intersect(const Set& a, const Set& b) const { return a.intersect(b); }
  Set unite(const Set& a, const Set& b) const { return a.unite(b); }
  Set subtract(const Set& a, const Set& b) const { return a.subtract(b); }
  bool is_null(const Set& s) const { return s.is_null(); }
  std::string describe(const Set& s) const { return s.to_string(); }
  std::optional<std::string> map_defect(EdgeId e) const;
  std::optional<std::string> square_defect(const Square& sq) const;

 private:
  const IntervalBranchingSystem& bs_;
  std::vector<BoxSet> ranges_;
};

AxiomReport check_axioms(const IntervalBranchingSystem& bs, AxiomMode mode, Execution exec = Execution::Parallel);

struct EquivalenceReport {
  AxiomReport finitely_aligned, row_finite;
  bool agree() const { return finitely_aligned.passed() == row_finite.passed(); }
};
// Runs both definitions on a graph without sources.
EquivalenceReport check_equivalence_rowfinite(const IntervalBranchingSystem& bs);

// Same sets and a.e. equal maps; declared exhaustive sets compared as given.
bool systems_equal(const IntervalBranchingSystem& a, const IntervalBranchingSystem& b);

// Partial semibranching function system: 𝒟_v = ℛ_v = D_v with τ_v = id, and
// 𝒟_μ = D_{s(μ)}, ℛ_μ = R_μ, τ_μ = f_μ for edges.
struct SemibranchingSystem {
  KGraph graph;
  std::size_t dim = 1;
  std::vector<BoxSet> vertex_domains;  // 𝒟_v = ℛ_v
  std::vector<PiecewiseMap> tau;       // τ_μ by EdgeId
  std::vector<ExhaustiveSet> exhaustive;

  // τ^{e_i}, defined on ∪ℛ_μ over μ of color i as τ_μ^{-1}; color 0 is τ^0 = id on X.
  PiecewiseMap coding_map(int color) const;
  BoxSet space() const;  // X = ∪ D_v
};

class SemibranchingError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Requires η(D_v) > 0 for every vertex.
SemibranchingSystem to_semibranching(const IntervalBranchingSystem& bs);
IntervalBranchingSystem from_semibranching(const SemibranchingSystem& sb);

// The six conditions of a partial semibranching function system.
AxiomReport check_semibranching(const SemibranchingSystem& sb);

}  // namespace hrg
