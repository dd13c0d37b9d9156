#pragma once

#include "hrg/execution.hpp"
#include "hrg/kgraph.hpp"

#include <string>
#include <vector>

namespace hrg {

struct ExhaustiveSet {
  VertexId vertex = 0;
  std::vector<EdgeId> edges;  // sorted
  friend bool operator==(const ExhaustiveSet& a, const ExhaustiveSet& b) {
    return a.vertex == b.vertex && a.edges == b.edges;
  }
  friend bool operator<(const ExhaustiveSet& a, const ExhaustiveSet& b) {
    return a.vertex != b.vertex ? a.vertex < b.vertex : a.edges < b.edges;
  }
};

// Vertices with more incoming edges are skipped by the enumeration.
inline constexpr std::size_t kMaxEnumeratedEdges = 12;

// Inclusion-minimal exhaustive sets of edges at v, in mask order.
std::vector<std::vector<EdgeId>> minimal_exhaustive_edge_sets(const KGraph& g, VertexId v,
                                                              Execution exec = Execution::Parallel);

// Declared sets that are exhaustive, every per-color set vΛ^{e_i} when the
// graph has no sources, and the minimal exhaustive edge sets at each vertex
// small enough to enumerate. Sorted and deduplicated. Declared sets that are
// not exhaustive are skipped with a warning.
std::vector<ExhaustiveSet> exhaustive_sets_to_check(const KGraph& g, const std::vector<ExhaustiveSet>& declared,
                                                    std::vector<std::string>* warnings = nullptr,
                                                    Execution exec = Execution::Parallel);

std::string describe(const KGraph& g, const ExhaustiveSet& s);  // "v1: {e1, g3}"

}  // namespace hrg
