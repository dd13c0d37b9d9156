#pragma once

#include "hrg/exhaustive_sets.hpp"
#include "hrg/kgraph.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace hrg {

enum class AxiomMode { FinitelyAligned, RowFinite, PartialSemibranching };

class ModeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ConditionResult {
  ConditionResult() = default;
  ConditionResult(int n, std::string title) : number(n), name(std::move(title)) {}

  int number = 0;
  std::string name;
  bool passed = true;
  std::string witness;  // offending set, empty on success
  std::string detail;   // which objects fail
  std::size_t checked = 0;
};

struct AxiomReport {
  AxiomMode mode = AxiomMode::FinitelyAligned;
  std::vector<ConditionResult> conditions;
  std::vector<std::string> warnings;
  bool passed() const {
    for (auto& c : conditions)
      if (!c.passed) return false;
    return true;
  }
  const ConditionResult* first_failure() const {
    for (auto& c : conditions)
      if (!c.passed) return &c;
    return nullptr;
  }
};

std::string to_string(AxiomMode m);  // "finitely-aligned" | "row-finite" | "partial-semibranching"

// The axiom checker is written once against a set model. A model provides
//   using Set;
//   const KGraph& graph() const;
//   Set domain(VertexId) const;            D_v
//   Set range(EdgeId) const;               R_μ
//   Set image(EdgeId, const Set&) const;   f_μ(S) for S ⊆ D_{s(μ)}
//   Set intersect/unite/subtract(const Set&, const Set&) const;
//   bool is_null(const Set&) const;
//   std::string describe(const Set&) const;
//   std::optional<std::string> map_defect(EdgeId) const;
//   std::optional<std::string> square_defect(const Square&) const;
// Boxes under Lebesgue measure and atoms of the boundary-path space under
// counting measure are the two models in use.
namespace axioms_detail {

inline void fail(ConditionResult& c, std::string witness, std::string detail) {
  if (!c.passed) return;
  c.passed = false;
  c.witness = std::move(witness);
  c.detail = std::move(detail);
}

template <class Model>
ConditionResult ranges_disjoint(const Model& m, int number) {
  const KGraph& g = m.graph();
  ConditionResult c{number, "ranges of distinct edges of one color are disjoint"};
  for (EdgeId a = 0; a < g.num_edges(); ++a)
    for (EdgeId b = a + 1; b < g.num_edges(); ++b) {
      if (g.edge(a).color != g.edge(b).color) continue;
      ++c.checked;
      auto cut = m.intersect(m.range(a), m.range(b));
      if (!m.is_null(cut)) fail(c, m.describe(cut), "R_" + g.edge(a).name + " and R_" + g.edge(b).name + " overlap");
    }
  return c;
}

template <class Model>
ConditionResult domains_disjoint(const Model& m, int number) {
  const KGraph& g = m.graph();
  ConditionResult c{number, "domains of distinct vertices are disjoint"};
  for (VertexId v = 0; v < g.num_vertices(); ++v)
    for (VertexId w = v + 1; w < g.num_vertices(); ++w) {
      ++c.checked;
      auto cut = m.intersect(m.domain(v), m.domain(w));
      if (!m.is_null(cut))
        fail(c, m.describe(cut), "D_" + g.vertex_name(v) + " and D_" + g.vertex_name(w) + " overlap");
    }
  return c;
}

template <class Model>
ConditionResult ranges_inside(const Model& m, int number) {
  const KGraph& g = m.graph();
  ConditionResult c{number, "each range lies in the domain of its range vertex"};
  for (EdgeId e = 0; e < g.num_edges(); ++e) {
    ++c.checked;
    auto out = m.subtract(m.range(e), m.domain(g.edge(e).range));
    if (!m.is_null(out))
      fail(c, m.describe(out), "R_" + g.edge(e).name + " leaves D_" + g.vertex_name(g.edge(e).range));
  }
  return c;
}

template <class Model>
ConditionResult maps_bijective(const Model& m, int number) {
  const KGraph& g = m.graph();
  ConditionResult c{number, "edge maps are bijections with Radon-Nikodym derivatives"};
  for (EdgeId e = 0; e < g.num_edges(); ++e) {
    ++c.checked;
    if (auto d = m.map_defect(e)) fail(c, g.edge(e).name, "f_" + g.edge(e).name + ": " + *d);
  }
  return c;
}

template <class Model>
ConditionResult squares_commute(const Model& m, int number) {
  const KGraph& g = m.graph();
  ConditionResult c{number, "maps respect the factorization squares"};
  for (auto& sq : g.squares()) {
    ++c.checked;
    if (auto d = m.square_defect(sq)) {
      std::string rule = g.edge(sq.e).name + " " + g.edge(sq.f).name + " = " + g.edge(sq.f2).name + " " +
                         g.edge(sq.e2).name;
      fail(c, rule, *d);
    }
  }
  return c;
}

template <class Model>
ConditionResult minimal_extensions(const Model& m, int number) {
  const KGraph& g = m.graph();
  ConditionResult c{number, "images outside minimal common extensions are disjoint"};
  for (EdgeId a = 0; a < g.num_edges(); ++a)
    for (EdgeId b = 0; b < g.num_edges(); ++b) {
      const Edge &ea = g.edge(a), &eb = g.edge(b);
      if (ea.range != eb.range || ea.color >= eb.color) continue;
      ++c.checked;
      auto rest_a = m.domain(ea.source), rest_b = m.domain(eb.source);
      for (auto& [alpha, beta] : lambda_min(g, g.edge_path(a), g.edge_path(b))) {
        rest_a = m.subtract(rest_a, m.range(alpha.word.at(0)));
        rest_b = m.subtract(rest_b, m.range(beta.word.at(0)));
      }
      auto cut = m.intersect(m.image(a, rest_a), m.image(b, rest_b));
      if (!m.is_null(cut))
        fail(c, m.describe(cut), "f_" + ea.name + " and f_" + eb.name + " overlap outside their minimal extensions");
    }
  return c;
}

template <class Model>
void cover(const Model& m, ConditionResult& c, const ExhaustiveSet& s) {
  ++c.checked;
  auto u = m.subtract(m.domain(s.vertex), m.domain(s.vertex));
  for (EdgeId e : s.edges) u = m.unite(u, m.range(e));
  auto missing = m.subtract(m.domain(s.vertex), u);
  auto extra = m.subtract(u, m.domain(s.vertex));
  if (!m.is_null(missing))
    fail(c, m.describe(missing), "ranges of " + describe(m.graph(), s) + " miss part of the vertex domain");
  else if (!m.is_null(extra))
    fail(c, m.describe(extra), "ranges of " + describe(m.graph(), s) + " leave the vertex domain");
}

}  // namespace axioms_detail

// Finitely aligned mode checks conditions (1)-(7) with condition (7) over the
// given exhaustive sets. Row-finite mode checks (1)-(5) of the simplified
// definition and needs a graph without sources.
template <class Model>
AxiomReport check_axioms_with(const Model& m, AxiomMode mode, const std::vector<ExhaustiveSet>& exhaustive) {
  namespace d = axioms_detail;
  const KGraph& g = m.graph();
  AxiomReport r;
  r.mode = mode;
  if (mode == AxiomMode::RowFinite) {
    if (g.has_sources()) throw ModeError("row-finite mode needs a graph without sources");
    r.conditions.push_back(d::ranges_disjoint(m, 1));
    r.conditions.push_back(d::domains_disjoint(m, 2));
    r.conditions.push_back(d::maps_bijective(m, 3));
    r.conditions.push_back(d::squares_commute(m, 4));
    ConditionResult c{5, "ranges of each color cover every vertex domain"};
    for (VertexId v = 0; v < g.num_vertices(); ++v)
      for (int color = 1; color <= g.rank(); ++color) d::cover(m, c, {v, g.edges_into(v, color)});
    r.conditions.push_back(std::move(c));
    return r;
  }
  r.conditions.push_back(d::ranges_disjoint(m, 1));
  r.conditions.push_back(d::domains_disjoint(m, 2));
  r.conditions.push_back(d::ranges_inside(m, 3));
  r.conditions.push_back(d::maps_bijective(m, 4));
  r.conditions.push_back(d::squares_commute(m, 5));
  r.conditions.push_back(d::minimal_extensions(m, 6));
  ConditionResult c{7, "exhaustive sets cover their vertex domain"};
  for (auto& s : exhaustive) d::cover(m, c, s);
  r.conditions.push_back(std::move(c));
  return r;
}

}  // namespace hrg
