#include "hrg/exhaustive_sets.hpp"

#include <algorithm>

namespace hrg {

namespace {

std::vector<Path> edge_paths(const KGraph& g, const std::vector<EdgeId>& edges, unsigned mask) {
  std::vector<Path> out;
  for (std::size_t i = 0; i < edges.size(); ++i)
    if (mask >> i & 1u) out.push_back(g.edge_path(edges[i]));
  return out;
}

}  // namespace

std::vector<std::vector<EdgeId>> minimal_exhaustive_edge_sets(const KGraph& g, VertexId v, Execution exec) {
  auto edges = g.edges_into(v);
  if (edges.size() > kMaxEnumeratedEdges) return {};
  const long count = 1L << edges.size();
  std::vector<char> ex(static_cast<std::size_t>(count));
  if (exec == Execution::Parallel) {
#pragma omp parallel for schedule(dynamic, 16)
    for (long mask = 0; mask < count; ++mask)
      ex[mask] = is_exhaustive(g, v, edge_paths(g, edges, static_cast<unsigned>(mask))).exhaustive;
  } else {
    for (long mask = 0; mask < count; ++mask)
      ex[mask] = is_exhaustive(g, v, edge_paths(g, edges, static_cast<unsigned>(mask))).exhaustive;
  }
  std::vector<std::vector<EdgeId>> out;
  for (long mask = 0; mask < count; ++mask) {
    if (!ex[mask]) continue;
    bool minimal = true;
    for (std::size_t i = 0; i < edges.size() && minimal; ++i)
      if (mask >> i & 1L) minimal = !ex[mask & ~(1L << i)];
    if (!minimal) continue;
    std::vector<EdgeId> set;
    for (std::size_t i = 0; i < edges.size(); ++i)
      if (mask >> i & 1L) set.push_back(edges[i]);
    std::sort(set.begin(), set.end());
    out.push_back(std::move(set));
  }
  return out;
}

std::vector<ExhaustiveSet> exhaustive_sets_to_check(const KGraph& g, const std::vector<ExhaustiveSet>& declared,
                                                    std::vector<std::string>* warnings, Execution exec) {
  std::vector<ExhaustiveSet> out;
  for (auto s : declared) {
    std::sort(s.edges.begin(), s.edges.end());
    std::vector<Path> paths;
    for (EdgeId e : s.edges) paths.push_back(g.edge_path(e));
    if (is_exhaustive(g, s.vertex, paths).exhaustive)
      out.push_back(std::move(s));
    else if (warnings)
      warnings->push_back("declared set " + describe(g, s) + " is not exhaustive; skipped");
  }
  bool no_sources = !g.has_sources();
  for (VertexId v = 0; v < g.num_vertices(); ++v) {
    if (no_sources)
      for (int c = 1; c <= g.rank(); ++c) {
        auto es = g.edges_into(v, c);
        std::sort(es.begin(), es.end());
        out.push_back({v, es});
      }
    for (auto& es : minimal_exhaustive_edge_sets(g, v, exec)) out.push_back({v, es});
    if (warnings && g.edges_into(v).size() > kMaxEnumeratedEdges)
      warnings->push_back("vertex " + g.vertex_name(v) + " has more than " + std::to_string(kMaxEnumeratedEdges) +
                          " edges; only declared and per-color exhaustive sets are checked there");
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::string describe(const KGraph& g, const ExhaustiveSet& s) {
  std::string out = g.vertex_name(s.vertex) + ": {";
  for (std::size_t i = 0; i < s.edges.size(); ++i) out += (i ? ", " : "") + g.edge(s.edges[i]).name;
  return out + "}";
}

}  // namespace hrg
