#include <doctest.h>
#include <hrg/kgraph.hpp>

#include "support/fixtures.hpp"
#include "support/oracles.hpp"

#include <random>

using namespace hrg;

namespace {

Path P(const KGraph& g, const std::string& s) { return g.parse_path(s); }

std::string N(const KGraph& g, const Path& p) { return g.path_name(p); }

}  // namespace

TEST_CASE("corpus graphs validate") {
  for (auto spec : {fixture::lambda2(), fixture::lambda3(), fixture::flip(), fixture::commuting(),
                    fixture::trivial3(), fixture::uv_graph(), fixture::eightvertex()}) {
    auto rep = validate_kgraph(KGraph::build(spec));
    CHECK(rep.valid);
  }
}

TEST_CASE("missing square is reported") {
  auto spec = fixture::lambda2();
  spec.squares.pop_back();
  auto rep = validate_kgraph(KGraph::build(spec));
  CHECK_FALSE(rep.valid);
  bool found = false;
  for (auto& i : rep.issues)
    if (i.kind == "missing-square" && i.witness == std::vector<std::string>{"f2", "e"}) found = true;
  CHECK(found);
}

TEST_CASE("structural errors precede rule checks") {
  auto spec = fixture::lambda2();
  spec.edges.push_back({"x", 1, "v", "nowhere"});
  CHECK_THROWS_AS(KGraph::build(spec), StructuralError);
  auto dup = fixture::lambda2();
  dup.edges.push_back({"e", 2, "v", "v"});
  CHECK_THROWS_AS(KGraph::build(dup), StructuralError);
  auto color = fixture::lambda2();
  color.edges[0].color = 3;
  CHECK_THROWS_AS(KGraph::build(color), StructuralError);
}

TEST_CASE("compose and factorize on the worked examples") {
  auto l3 = KGraph::build(fixture::lambda3());
  Path f1e = compose(l3, P(l3, "f1"), P(l3, "e"));
  // Normal form is color 1 first: f1 e stays, and equals e f2 as a morphism.
  CHECK(N(l3, f1e) == "f1.e");
  CHECK(l3.parse_path("e.f2") == f1e);
  auto [pre, suf] = factorize(l3, f1e, Degree(std::vector<unsigned>{0, 1}));
  CHECK(N(l3, pre) == "e");
  CHECK(N(l3, suf) == "f2");
  auto [p0, s0] = factorize(l3, f1e, Degree(2));
  CHECK(p0 == l3.vertex_path(0));
  CHECK(s0 == f1e);
  auto [pf, sf] = factorize(l3, f1e, f1e.degree);
  CHECK(pf == f1e);
  CHECK(sf.is_vertex());
  CHECK(compose(l3, l3.vertex_path(0), f1e) == f1e);

  auto fl = KGraph::build(fixture::flip());
  // f1 e2 = e1 f2 in the flip rule
  CHECK(compose(fl, P(fl, "e1"), P(fl, "f2")) == compose(fl, P(fl, "f1"), P(fl, "e2")));
  CHECK_THROWS_AS(factorize(fl, P(fl, "f1"), Degree(std::vector<unsigned>{0, 1})), PathError);
}

TEST_CASE("compose rejects non-composable pairs") {
  auto g = KGraph::build(fixture::uv_graph());
  CHECK_THROWS_AS(compose(g, P(g, "k"), P(g, "h")), PathError);
}

TEST_CASE("path enumeration") {
  auto fl = KGraph::build(fixture::flip());
  CHECK(enumerate_paths(fl, 0, Degree(std::vector<unsigned>{1, 1})).size() == 4);
  CHECK(enumerate_paths(fl, 0, Degree(2)).size() == 1);
  auto l2 = KGraph::build(fixture::lambda2());
  auto two = enumerate_paths(l2, 0, Degree(std::vector<unsigned>{2, 0}));
  std::vector<std::string> names;
  for (auto& p : two) names.push_back(N(l2, p));
  CHECK(names == std::vector<std::string>{"f1.f1", "f1.f2", "f2.f1", "f2.f2"});
  auto ev = KGraph::build(fixture::eightvertex());
  CHECK(enumerate_paths(ev, ev.vertex("v3"), Degree(std::vector<unsigned>{1, 0})).empty());
}

TEST_CASE("lambda_min on the worked examples") {
  auto l3 = KGraph::build(fixture::lambda3());
  auto lm = lambda_min(l3, P(l3, "f1"), P(l3, "e"));
  REQUIRE(lm.size() == 1);
  CHECK(N(l3, lm[0].first) == "e");
  CHECK(N(l3, lm[0].second) == "f2");
  auto self = lambda_min(l3, P(l3, "f1"), P(l3, "f1"));
  REQUIRE(self.size() == 1);
  CHECK(self[0].first.is_vertex());
  CHECK(self[0].second.is_vertex());
  CHECK(lambda_min(l3, P(l3, "f1"), P(l3, "f2")).empty());

  auto fl = KGraph::build(fixture::flip());
  auto f = lambda_min(fl, P(fl, "f1"), P(fl, "e1"));
  REQUIRE(f.size() == 2);
  CHECK(N(fl, f[0].first) == "e1");
  CHECK(N(fl, f[0].second) == "f1");
  CHECK(N(fl, f[1].first) == "e2");
  CHECK(N(fl, f[1].second) == "f2");

  auto uv = KGraph::build(fixture::uv_graph());
  CHECK_THROWS_AS(lambda_min(uv, P(uv, "g"), P(uv, "h")), PathError);
}

TEST_CASE("exhaustiveness on the worked examples") {
  auto l2 = KGraph::build(fixture::lambda2());
  CHECK(is_exhaustive(l2, 0, {P(l2, "e")}).exhaustive);
  auto none = is_exhaustive(l2, 0, {});
  CHECK_FALSE(none.exhaustive);
  REQUIRE(none.witness);
  CHECK(none.witness->word.size() == 1);
  CHECK_FALSE(is_exhaustive(l2, 0, {P(l2, "f1")}).exhaustive);
  CHECK(is_exhaustive(l2, 0, {P(l2, "f1"), P(l2, "f2")}).exhaustive);

  auto ev = KGraph::build(fixture::eightvertex());
  VertexId v1 = ev.vertex("v1");
  CHECK(is_exhaustive(ev, v1, {P(ev, "e1"), P(ev, "g3")}).exhaustive);
  CHECK(is_exhaustive(ev, v1, {P(ev, "e1"), P(ev, "e2")}).exhaustive);
  CHECK(is_exhaustive(ev, v1, {P(ev, "g1"), P(ev, "g2"), P(ev, "g3")}).exhaustive);
  CHECK_FALSE(is_exhaustive(ev, v1, {P(ev, "e1")}).exhaustive);
  CHECK_FALSE(is_exhaustive(ev, v1, {P(ev, "g1"), P(ev, "g2")}).exhaustive);
  CHECK_THROWS_AS(is_exhaustive(ev, v1, {P(ev, "g4")}), PathError);
}

TEST_CASE("exhaustiveness is exact on graphs that are not locally convex") {
  // x has no edges; a red and a blue edge both run x -> w. {a} misses b.
  GraphSpec s{2, {"w", "x"}, {{"a", 1, "x", "w"}, {"b", 2, "x", "w"}}, {}};
  auto g = KGraph::build(s);
  REQUIRE(validate_kgraph(g).valid);
  auto r = is_exhaustive(g, 0, {P(g, "a")});
  CHECK_FALSE(r.exhaustive);
  REQUIRE(r.witness);
  CHECK(N(g, *r.witness) == "b");
  CHECK(is_exhaustive(g, 0, {P(g, "a"), P(g, "b")}).exhaustive);
}

TEST_CASE("composition is associative and factorization round-trips") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 40; ++trial) {
    auto g = oracle::random_2graph_retry(rng, 1 + trial % 2, 3);
    for (VertexId v = 0; v < g.num_vertices(); ++v) {
      auto paths = enumerate_paths_upto(g, v, Degree(std::vector<unsigned>{1, 1}));
      for (auto& p : paths) {
        for (auto& q : enumerate_paths_upto(g, p.source, Degree(std::vector<unsigned>{1, 1}))) {
          for (auto& r : enumerate_paths(g, q.source, Degree(std::vector<unsigned>{1, 0}))) {
            CHECK(compose(g, compose(g, p, q), r) == compose(g, p, compose(g, q, r)));
          }
          Path pq = compose(g, p, q);
          // Normal form agrees with the rewriting oracle.
          std::vector<EdgeId> w = p.word;
          w.insert(w.end(), q.word.begin(), q.word.end());
          CHECK(oracle::same_morphism(g, w, pq.word));
          for (auto& n : degrees_upto(pq.degree)) {
            auto [a, b] = factorize(g, pq, n);
            CHECK(a.degree == n);
            CHECK(compose(g, a, b) == pq);
          }
        }
      }
    }
  }
}

TEST_CASE("lambda_min matches brute force on random graphs with up to 4 edges per color") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 30; ++trial) {
    auto g = oracle::random_2graph_retry(rng, 1 + trial % 2, 4);
    for (VertexId v = 0; v < g.num_vertices(); ++v) {
      auto ps = enumerate_paths_upto(g, v, Degree(std::vector<unsigned>{1, 1}));
      for (auto& mu : ps)
        for (auto& nu : ps) {
          auto mine = lambda_min(g, mu, nu);
          auto ref = oracle::lambda_min(g, oracle::raw(g, mu), oracle::raw(g, nu));
          REQUIRE(mine.size() == ref.size());
          for (auto& [a, b] : mine) {
            bool found = false;
            for (auto& [ra, rb] : ref)
              if (oracle::same_morphism(g, ra, a.word) && oracle::same_morphism(g, rb, b.word)) found = true;
            CHECK(found);
          }
        }
    }
  }
}

TEST_CASE("mutating a square of a 3-graph breaks bijectivity or associativity") {
  // Two edges per color; cube-like squares that satisfy associativity.
  GraphSpec s{3, {"v"}, {}, {}};
  for (int c = 1; c <= 3; ++c)
    for (int i = 1; i <= 2; ++i) s.edges.push_back({std::string(1, "abc"[c - 1]) + std::to_string(i), c, "v", "v"});
  for (auto [x, y] : {std::pair{'a', 'b'}, {'a', 'c'}, {'b', 'c'}})
    for (int i = 1; i <= 2; ++i)
      for (int j = 1; j <= 2; ++j)
        s.squares.push_back({x + std::to_string(i), y + std::to_string(j), y + std::to_string(j),
                             x + std::to_string(i)});
  REQUIRE(validate_kgraph(KGraph::build(s)).valid);
  for (std::size_t k = 0; k < s.squares.size(); ++k) {
    auto sq = s.squares[k];
    char y = sq.f2[0], x = sq.e2[0];
    for (int i = 1; i <= 2; ++i)
      for (int j = 1; j <= 2; ++j) {
        std::string f2 = y + std::to_string(i), e2 = x + std::to_string(j);
        if (f2 == sq.f2 && e2 == sq.e2) continue;
        auto m = s;
        m.squares[k].f2 = f2;
        m.squares[k].e2 = e2;
        auto rep = validate_kgraph(KGraph::build(m));
        CHECK_FALSE(rep.valid);
      }
  }
}

TEST_CASE("associativity failure is detected with a witness triple") {
  // Each color pair has a bijective table, but a1 swaps b1/b2 while the b/c
  // table is not compatible with that swap.
  GraphSpec s{3, {"v"}, {}, {}};
  for (int c = 1; c <= 3; ++c)
    for (int i = 1; i <= 2; ++i) s.edges.push_back({std::string(1, "abc"[c - 1]) + std::to_string(i), c, "v", "v"});
  s.squares = {{"a1", "b1", "b2", "a1"}, {"a1", "b2", "b1", "a1"}, {"a2", "b1", "b1", "a2"},
               {"a2", "b2", "b2", "a2"}, {"a1", "c1", "c1", "a1"}, {"a1", "c2", "c2", "a1"},
               {"a2", "c1", "c1", "a2"}, {"a2", "c2", "c2", "a2"}, {"b1", "c1", "c2", "b2"},
               {"b2", "c2", "c1", "b1"}, {"b1", "c2", "c2", "b1"}, {"b2", "c1", "c1", "b2"}};
  auto rep = validate_kgraph(KGraph::build(s));
  CHECK_FALSE(rep.valid);
  bool assoc = false;
  for (auto& i : rep.issues)
    if (i.kind == "associativity" && i.witness == std::vector<std::string>{"c1", "b1", "a1"}) assoc = true;
  CHECK(assoc);
}

TEST_CASE("is_exhaustive matches the direct definition on random graphs") {
  std::mt19937_64 rng(23);
  int disagreements = 0, exhaustive_seen = 0, total = 0;
  for (int trial = 0; trial < 60; ++trial) {
    auto g = oracle::random_2graph_retry(rng, 1 + trial % 2, 3);
    for (VertexId v = 0; v < g.num_vertices(); ++v) {
      auto pool = enumerate_paths_upto(g, v, Degree(std::vector<unsigned>{1, 1}));
      for (int k = 0; k < 6; ++k) {
        std::vector<Path> E;
        std::vector<oracle::RawPath> rawE;
        for (auto& p : pool)
          if (!p.is_vertex() && rng() % 3 == 0) {
            E.push_back(p);
            rawE.push_back(oracle::raw(g, p));
          }
        auto mine = is_exhaustive(g, v, E);
        bool ref = oracle::is_exhaustive(g, v, rawE);
        ++total;
        exhaustive_seen += ref;
        if (mine.exhaustive != ref) ++disagreements;
        if (!mine.exhaustive) {
          REQUIRE(mine.witness);
          for (auto& nu : E) CHECK(lambda_min(g, *mine.witness, nu).empty());
        }
      }
    }
  }
  CHECK(disagreements == 0);
  CHECK(exhaustive_seen > 0);
  CHECK(exhaustive_seen < total);
}
