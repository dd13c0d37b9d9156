#include "hrg/branching.hpp"

namespace hrg {

std::string to_string(AxiomMode m) {
  switch (m) {
    case AxiomMode::FinitelyAligned: return "finitely-aligned";
    case AxiomMode::RowFinite: return "row-finite";
    case AxiomMode::PartialSemibranching: return "partial-semibranching";
  }
  return "";
}

namespace {

// First region where two piecewise maps disagree, if any.
std::optional<std::string> map_difference(const PiecewiseMap& f, const PiecewiseMap& g) {
  auto only_f = f.domain().subtract(g.domain());
  if (!only_f.is_null()) return "domains differ on " + only_f.to_string();
  auto only_g = g.domain().subtract(f.domain());
  if (!only_g.is_null()) return "domains differ on " + only_g.to_string();
  for (auto& a : f.pieces())
    for (auto& b : g.pieces())
      if (auto cut = a.domain.intersect(b.domain); cut && a.maps != b.maps)
        return "on " + cut->to_string() + ": " + mapvec_to_string(a.maps) + " vs " + mapvec_to_string(b.maps);
  return std::nullopt;
}

// f ∘ g where defined.
PiecewiseMap compose_partial(const PiecewiseMap& f, const PiecewiseMap& g) {
  return map_compose(f, g.restricted(g.preimage_of(f.domain())));
}

bool same_graph(const KGraph& a, const KGraph& b) {
  if (a.rank() != b.rank() || a.num_vertices() != b.num_vertices() || a.num_edges() != b.num_edges() ||
      a.squares().size() != b.squares().size())
    return false;
  for (VertexId v = 0; v < a.num_vertices(); ++v)
    if (a.vertex_name(v) != b.vertex_name(v)) return false;
  for (EdgeId e = 0; e < a.num_edges(); ++e) {
    auto &x = a.edge(e), &y = b.edge(e);
    if (x.name != y.name || x.color != y.color || x.source != y.source || x.range != y.range) return false;
  }
  for (std::size_t i = 0; i < a.squares().size(); ++i) {
    auto &x = a.squares()[i], &y = b.squares()[i];
    if (x.e != y.e || x.f != y.f || x.f2 != y.f2 || x.e2 != y.e2) return false;
  }
  return true;
}

}  // namespace

void IntervalBranchingSystem::check_shape() const {
  if (domains.size() != graph.num_vertices())
    throw std::invalid_argument("expected a domain for each of the " + std::to_string(graph.num_vertices()) +
                                " vertices");
  if (maps.size() != graph.num_edges())
    throw std::invalid_argument("expected a map for each of the " + std::to_string(graph.num_edges()) + " edges");
  for (VertexId v = 0; v < domains.size(); ++v)
    if (domains[v].dim() != dim) throw std::invalid_argument("D_" + graph.vertex_name(v) + " has the wrong dimension");
  for (EdgeId e = 0; e < maps.size(); ++e)
    if (maps[e].dim() != dim) throw std::invalid_argument("f_" + graph.edge(e).name + " has the wrong dimension");
}

IntervalModel::IntervalModel(const IntervalBranchingSystem& bs) : bs_(bs) {
  bs.check_shape();
  for (auto& f : bs.maps) ranges_.push_back(f.image());
}

std::optional<std::string> IntervalModel::map_defect(EdgeId e) const {
  const PiecewiseMap& f = bs_.maps[e];
  if (auto d = check_piecewise_bijection(f); !d.ok) return d.message;
  const BoxSet& D = bs_.domain(graph().edge(e).source);
  if (!f.domain().equal_ae(D))
    return "domain " + f.domain().to_string() + " differs from D_" + graph().vertex_name(graph().edge(e).source) +
           " = " + D.to_string();
  return std::nullopt;
}

std::optional<std::string> IntervalModel::square_defect(const Square& sq) const {
  try {
    auto lhs = map_compose(bs_.maps[sq.e], bs_.maps[sq.f]);
    auto rhs = map_compose(bs_.maps[sq.f2], bs_.maps[sq.e2]);
    return map_difference(lhs, rhs);
  } catch (const std::exception& ex) {
    return std::string(ex.what());
  }
}

AxiomReport check_axioms(const IntervalBranchingSystem& bs, AxiomMode mode, Execution exec) {
  IntervalModel m(bs);
  std::vector<std::string> warnings;
  std::vector<ExhaustiveSet> sets;
  if (mode == AxiomMode::FinitelyAligned) sets = exhaustive_sets_to_check(bs.graph, bs.exhaustive, &warnings, exec);
  AxiomReport r = check_axioms_with(m, mode, sets);
  for (VertexId v = 0; v < bs.graph.num_vertices(); ++v)
    if (bs.domain(v).is_null() && !bs.graph.edges_into(v).empty())
      warnings.push_back("D_" + bs.graph.vertex_name(v) + " is empty but the vertex receives edges");
  r.warnings.insert(r.warnings.end(), warnings.begin(), warnings.end());
  return r;
}

EquivalenceReport check_equivalence_rowfinite(const IntervalBranchingSystem& bs) {
  return {check_axioms(bs, AxiomMode::FinitelyAligned), check_axioms(bs, AxiomMode::RowFinite)};
}

bool systems_equal(const IntervalBranchingSystem& a, const IntervalBranchingSystem& b) {
  if (!same_graph(a.graph, b.graph) || a.dim != b.dim || a.domains.size() != b.domains.size() ||
      a.maps.size() != b.maps.size() || a.exhaustive != b.exhaustive)
    return false;
  for (std::size_t v = 0; v < a.domains.size(); ++v)
    if (!a.domains[v].equal_ae(b.domains[v])) return false;
  for (std::size_t e = 0; e < a.maps.size(); ++e)
    if (!map_equal_ae(a.maps[e], b.maps[e])) return false;
  return true;
}

PiecewiseMap SemibranchingSystem::coding_map(int color) const {
  if (color == 0) return PiecewiseMap::identity_on(space());
  std::vector<Piece> pieces;
  for (EdgeId e = 0; e < graph.num_edges(); ++e)
    if (graph.edge(e).color == color) {
      auto inv = tau[e].inverse();
      for (auto& p : inv.pieces()) pieces.push_back(p);
    }
  return PiecewiseMap(dim, std::move(pieces));
}

BoxSet SemibranchingSystem::space() const {
  BoxSet x(dim);
  for (auto& d : vertex_domains) x = x.unite(d);
  return x;
}

SemibranchingSystem to_semibranching(const IntervalBranchingSystem& bs) {
  bs.check_shape();
  for (VertexId v = 0; v < bs.graph.num_vertices(); ++v)
    if (bs.domain(v).measure().sign() <= 0)
      throw SemibranchingError("D_" + bs.graph.vertex_name(v) + " has measure zero");
  return {bs.graph, bs.dim, bs.domains, bs.maps, bs.exhaustive};
}

IntervalBranchingSystem from_semibranching(const SemibranchingSystem& sb) {
  IntervalBranchingSystem bs{sb.graph, sb.dim, sb.vertex_domains, sb.tau, sb.exhaustive};
  bs.check_shape();
  return bs;
}

AxiomReport check_semibranching(const SemibranchingSystem& sb) {
  const KGraph& g = sb.graph;
  using axioms_detail::fail;
  AxiomReport r;
  r.mode = AxiomMode::PartialSemibranching;
  BoxSet X = sb.space();

  ConditionResult c1{1, "each τ_μ is a bijection with Radon-Nikodym derivatives"};
  for (EdgeId e = 0; e < g.num_edges(); ++e) {
    ++c1.checked;
    if (auto d = check_piecewise_bijection(sb.tau[e]); !d.ok) fail(c1, g.edge(e).name, d.message);
  }
  r.conditions.push_back(c1);

  ConditionResult c2{2, "ranges of each degree cover X"};
  ConditionResult c3{3, "ranges of distinct paths of one degree are disjoint"};
  for (int color = 0; color <= g.rank(); ++color) {
    std::vector<std::pair<std::string, BoxSet>> ranges;
    if (color == 0)
      for (VertexId v = 0; v < g.num_vertices(); ++v) ranges.emplace_back(g.vertex_name(v), sb.vertex_domains[v]);
    else
      for (EdgeId e = 0; e < g.num_edges(); ++e)
        if (g.edge(e).color == color) ranges.emplace_back(g.edge(e).name, sb.tau[e].image());
    BoxSet u(sb.dim);
    for (auto& [name, R] : ranges) u = u.unite(R);
    ++c2.checked;
    if (auto miss = X.subtract(u); !miss.is_null())
      fail(c2, miss.to_string(), "degree " + std::to_string(color) + " ranges miss part of X");
    for (std::size_t i = 0; i < ranges.size(); ++i)
      for (std::size_t j = i + 1; j < ranges.size(); ++j) {
        ++c3.checked;
        if (auto cut = ranges[i].second.intersect(ranges[j].second); !cut.is_null())
          fail(c3, cut.to_string(), ranges[i].first + " and " + ranges[j].first + " overlap");
      }
  }
  r.conditions.push_back(c2);
  r.conditions.push_back(c3);

  ConditionResult c4{4, "vertex maps are identities on sets of positive measure"};
  for (VertexId v = 0; v < g.num_vertices(); ++v) {
    ++c4.checked;
    if (sb.vertex_domains[v].measure().sign() <= 0)
      fail(c4, g.vertex_name(v), "D_" + g.vertex_name(v) + " has measure zero");
  }
  r.conditions.push_back(c4);

  ConditionResult c5{5, "ranges lie in the domain of the range vertex and τ_μ starts on D_{s(μ)}"};
  for (EdgeId e = 0; e < g.num_edges(); ++e) {
    ++c5.checked;
    const Edge& ed = g.edge(e);
    if (auto out = sb.tau[e].image().subtract(sb.vertex_domains[ed.range]); !out.is_null())
      fail(c5, out.to_string(), "R_" + ed.name + " leaves D_" + g.vertex_name(ed.range));
    else if (!sb.tau[e].domain().equal_ae(sb.vertex_domains[ed.source]))
      fail(c5, sb.tau[e].domain().to_string(), "τ_" + ed.name + " is not defined on D_" + g.vertex_name(ed.source));
  }
  r.conditions.push_back(c5);

  ConditionResult c6{6, "coding maps commute"};
  for (int i = 1; i <= g.rank(); ++i)
    for (int j = i + 1; j <= g.rank(); ++j) {
      ++c6.checked;
      std::string pair = "τ^" + std::to_string(i) + " and τ^" + std::to_string(j);
      try {
        auto ti = sb.coding_map(i), tj = sb.coding_map(j);
        if (auto d = map_difference(compose_partial(ti, tj), compose_partial(tj, ti))) fail(c6, pair, *d);
      } catch (const std::exception& ex) {
        fail(c6, pair, ex.what());
      }
    }
  r.conditions.push_back(c6);
  return r;
}

}  // namespace hrg
