#include "hrg/canonical.hpp"

namespace hrg {

CanonicalBS canonical_bs(const KGraph& g, unsigned depth_cap) {
  auto rep = validate_kgraph(g);
  if (!rep.valid) throw StructuralError("canonical system needs a valid graph: " + rep.issues.front().message);
  return {g, depth_cap};
}

CanonicalModel::CanonicalModel(const CanonicalBS& bs) : bs_(bs) {
  const KGraph& g = bs.graph;
  for (VertexId v = 0; v < g.num_vertices(); ++v)
    domains_.push_back(AtomSet::from_cylinders(g, CylinderSet::vertex(g, v), bs.depth_cap));
  for (EdgeId e = 0; e < g.num_edges(); ++e)
    ranges_.push_back(AtomSet::from_cylinders(g, CylinderSet::edge(g, e), bs.depth_cap));
}

std::optional<std::string> CanonicalModel::map_defect(EdgeId e) const {
  auto img = image(e, domains_[graph().edge(e).source]);
  if (!atom_equal(graph(), img, ranges_[e]))
    return "prefix image " + describe(img) + " differs from " + describe(ranges_[e]);
  return std::nullopt;
}

std::optional<std::string> CanonicalModel::square_defect(const Square& sq) const {
  const KGraph& g = graph();
  Path lhs = compose(g, g.edge_path(sq.e), g.edge_path(sq.f));
  Path rhs = compose(g, g.edge_path(sq.f2), g.edge_path(sq.e2));
  if (lhs != rhs) return g.path_name(lhs) + " differs from " + g.path_name(rhs);
  auto D = domains_[g.edge(sq.f).source];
  auto a = image(sq.e, image(sq.f, D)), b = image(sq.f2, image(sq.e2, D));
  if (!atom_equal(g, a, b)) return "prefix images " + describe(a) + " and " + describe(b) + " differ";
  return std::nullopt;
}

AxiomReport check_axioms(const CanonicalBS& bs, AxiomMode mode, Execution exec) {
  CanonicalModel m(bs);
  std::vector<std::string> warnings;
  std::vector<ExhaustiveSet> sets;
  if (mode == AxiomMode::FinitelyAligned) sets = exhaustive_sets_to_check(bs.graph, {}, &warnings, exec);
  AxiomReport r = check_axioms_with(m, mode, sets);
  r.warnings = std::move(warnings);
  return r;
}

}  // namespace hrg
