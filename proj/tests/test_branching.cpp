#include <doctest.h>
#include <hrg/canonical.hpp>
#include <hrg/dsl.hpp>

#include "support/corpus.hpp"
#include "support/oracles.hpp"

#include <random>

using namespace hrg;

namespace {

IntervalBranchingSystem with_map(IntervalBranchingSystem bs, const std::string& edge, const std::string& line) {
  Box b = bs.maps[bs.graph.edge_id(edge)].pieces().front().domain;
  bs.maps[bs.graph.edge_id(edge)] = PiecewiseMap(bs.dim, {{b, {parse_map1d(line)}}});
  return bs;
}

// Two edges a (blue) and b (red) from x to w with no square between them.
IntervalBranchingSystem open_pair(const std::string& a, const std::string& b) {
  auto g = KGraph::build({2, {"w", "x"}, {{"a", 1, "x", "w"}, {"b", 2, "x", "w"}}, {}});
  std::string text = "DOMAIN\nw: [0,1]\nx: [1,2]\nMAPS\na: [1,2] -> (" + a + ")\nb: [1,2] -> (" + b + ")\n";
  return parse_bs_text(text, g);
}

}  // namespace

TEST_CASE("corpus systems satisfy every condition") {
  for (auto& name : corpus::systems()) {
    CAPTURE(name);
    auto bs = corpus::system(name);
    auto r = check_axioms(bs, AxiomMode::FinitelyAligned);
    CHECK(r.passed());
    CHECK(r.conditions.size() == 7);
    if (!bs.graph.has_sources()) {
      auto eq = check_equivalence_rowfinite(bs);
      CHECK(eq.row_finite.passed());
      CHECK(eq.agree());
    } else {
      CHECK_THROWS_AS(check_axioms(bs, AxiomMode::RowFinite), ModeError);
    }
  }
}

TEST_CASE("overlapping ranges fail condition (1)") {
  auto bs = with_map(corpus::system("lambda2"), "f2", "3/4*x + 1/4");
  auto r = check_axioms(bs, AxiomMode::FinitelyAligned);
  REQUIRE(r.first_failure());
  CHECK(r.first_failure()->number == 1);
  CHECK(r.first_failure()->witness == "[1/4,1/2]");
  auto eq = check_equivalence_rowfinite(bs);
  CHECK_FALSE(eq.finitely_aligned.passed());
  CHECK_FALSE(eq.row_finite.passed());
  CHECK(eq.agree());
}

TEST_CASE("a map that ignores its square fails condition (5)") {
  auto bs = corpus::system("lambda3");
  bs.maps[bs.graph.edge_id("f2")] = PiecewiseMap(1, {{parse_box("[0,1]"), {parse_map1d("1/2*x + 1/2")}}});
  auto r = check_axioms(bs, AxiomMode::FinitelyAligned);
  CHECK_FALSE(r.conditions[4].passed);
  CHECK(r.conditions[4].witness == "f1 e = e f2");
  CHECK(r.conditions[0].passed);
  CHECK(r.conditions[6].passed);
}

TEST_CASE("condition (6) separates edges without common extensions") {
  auto bad = open_pair("x - 1", "x - 1");
  auto r = check_axioms(bad, AxiomMode::FinitelyAligned);
  CHECK_FALSE(r.conditions[5].passed);
  CHECK(r.conditions[5].witness == "[0,1]");
  CHECK(r.conditions[0].passed);

  auto good = open_pair("1/2*x - 1/2", "1/2*x");
  CHECK(check_axioms(good, AxiomMode::FinitelyAligned).passed());
  CHECK_THROWS_AS(check_axioms(good, AxiomMode::RowFinite), ModeError);

  // {a} alone is not exhaustive, so only {a, b} must cover D_w.
  auto half = open_pair("1/2*x - 1/2", "1/4*x + 1/4");
  auto h = check_axioms(half, AxiomMode::FinitelyAligned);
  CHECK_FALSE(h.conditions[6].passed);
  CHECK(h.conditions[5].passed);
  CHECK(h.conditions[6].witness == "[3/4,1]");
}

TEST_CASE("bijection and domain defects fail condition (4)") {
  auto bs = corpus::system("lambda2");
  bs.maps[bs.graph.edge_id("f1")] = PiecewiseMap(1, {{parse_box("[0,1/2]"), {parse_map1d("x")}}});
  auto r = check_axioms(bs, AxiomMode::FinitelyAligned);
  CHECK_FALSE(r.conditions[3].passed);
  CHECK(r.conditions[3].witness == "f1");
}

TEST_CASE("declared sets that are not exhaustive are skipped with a warning") {
  auto bs = corpus::system("eightvertex");
  bs.exhaustive.push_back({bs.graph.vertex("v1"), {bs.graph.edge_id("e1")}});
  auto r = check_axioms(bs, AxiomMode::FinitelyAligned);
  CHECK(r.passed());
  REQUIRE(r.warnings.size() == 1);
  CHECK(r.warnings[0] == "declared set v1: {e1} is not exhaustive; skipped");
}

TEST_CASE("minimal exhaustive edge sets") {
  auto g = corpus::graph("flip");
  auto sets = minimal_exhaustive_edge_sets(g, 0);
  std::vector<std::string> names;
  for (auto& s : sets) names.push_back(describe(g, {0, s}));
  CHECK(names == std::vector<std::string>{"v: {f1, f2}", "v: {f2, e1}", "v: {f1, e2}", "v: {e1, e2}"});

  auto ev = corpus::graph("eightvertex");
  auto v1 = minimal_exhaustive_edge_sets(ev, ev.vertex("v1"));
  CHECK(v1.size() == 4);
}

TEST_CASE("parallel and serial exhaustive enumeration agree") {
  std::mt19937_64 rng(21);
  for (int t = 0; t < 40; ++t) {
    auto g = oracle::random_2graph_retry(rng, 1 + t % 2, 3);
    for (VertexId v = 0; v < g.num_vertices(); ++v)
      CHECK(minimal_exhaustive_edge_sets(g, v, Execution::Serial) ==
            minimal_exhaustive_edge_sets(g, v, Execution::Parallel));
    CHECK(exhaustive_sets_to_check(g, {}, nullptr, Execution::Serial) ==
          exhaustive_sets_to_check(g, {}, nullptr, Execution::Parallel));
  }
}

TEST_CASE("canonical systems satisfy every condition") {
  for (auto& name : corpus::graphs()) {
    CAPTURE(name);
    auto g = corpus::graph(name);
    auto cbs = canonical_bs(g);
    CHECK(check_axioms(cbs, AxiomMode::FinitelyAligned).passed());
    if (!g.has_sources()) CHECK(check_axioms(cbs, AxiomMode::RowFinite).passed());
  }
  std::mt19937_64 rng(17);
  for (int t = 0; t < 30; ++t) {
    auto g = oracle::random_2graph_retry(rng, 1 + t % 2, 2);
    CHECK(check_axioms(canonical_bs(g), AxiomMode::FinitelyAligned).passed());
  }
  auto empty = KGraph::build({2, {"u", "w"}, {}, {}});
  auto r = check_axioms(canonical_bs(empty), AxiomMode::FinitelyAligned);
  CHECK(r.passed());
  CHECK(r.conditions[1].checked == 1);
}

TEST_CASE("semibranching conversion round-trips") {
  for (auto& name : corpus::systems()) {
    CAPTURE(name);
    auto bs = corpus::system(name);
    auto sb = to_semibranching(bs);
    CHECK(systems_equal(from_semibranching(sb), bs));
    if (!bs.graph.has_sources()) CHECK(check_semibranching(sb).passed());
  }
  auto sb = to_semibranching(corpus::system("lambda2"));
  CHECK(map_equal_ae(sb.coding_map(2), PiecewiseMap::identity_on(sb.space())));
  CHECK(map_equal_ae(sb.coding_map(0), PiecewiseMap::identity_on(sb.space())));

  auto bad = corpus::system("uv-graph");
  bad.domains[bad.graph.vertex("v")] = BoxSet(1);
  CHECK_THROWS_AS(to_semibranching(bad), SemibranchingError);
}

TEST_CASE("semibranching check reports broken coding maps") {
  auto sb = to_semibranching(with_map(corpus::system("lambda2"), "f2", "3/4*x + 1/4"));
  auto r = check_semibranching(sb);
  CHECK_FALSE(r.conditions[2].passed);
  CHECK(r.conditions[2].witness == "[1/4,1/2]");
}
