#pragma once

// Independent reference implementations used only by tests. They work on raw
// edge words and never call the normal-form machinery of the library.

#include <hrg/kgraph.hpp>

#include <algorithm>
#include <deque>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

namespace oracle {

using hrg::EdgeId;
using hrg::KGraph;
using hrg::VertexId;
using Word = std::vector<EdgeId>;

// Every word equal to w as a morphism: closure under single square moves in
// both directions.
inline std::set<Word> word_class(const KGraph& g, const Word& w) {
  std::set<Word> seen{w};
  std::deque<Word> queue{w};
  while (!queue.empty()) {
    Word cur = queue.front();
    queue.pop_front();
    for (std::size_t i = 0; i + 1 < cur.size(); ++i) {
      for (auto& sq : g.squares()) {
        Word next = cur;
        if (cur[i] == sq.e && cur[i + 1] == sq.f) {
          next[i] = sq.f2;
          next[i + 1] = sq.e2;
        } else if (cur[i] == sq.f2 && cur[i + 1] == sq.e2) {
          next[i] = sq.e;
          next[i + 1] = sq.f;
        } else {
          continue;
        }
        if (seen.insert(next).second) queue.push_back(next);
      }
    }
  }
  return seen;
}

inline bool same_morphism(const KGraph& g, const Word& a, const Word& b) {
  if (a.size() != b.size()) return false;
  return word_class(g, a).count(b) > 0;
}

// All composable words at v whose color sequence is ascending with the given
// multiplicities.
inline std::vector<Word> sorted_words(const KGraph& g, VertexId v, const std::vector<unsigned>& deg) {
  std::vector<int> colors;
  for (std::size_t i = 0; i < deg.size(); ++i) colors.insert(colors.end(), deg[i], static_cast<int>(i + 1));
  std::vector<Word> out;
  Word w;
  std::function<void(VertexId)> rec = [&](VertexId at) {
    if (w.size() == colors.size()) {
      out.push_back(w);
      return;
    }
    for (EdgeId e = 0; e < g.num_edges(); ++e) {
      if (g.edge(e).range != at || g.edge(e).color != colors[w.size()]) continue;
      w.push_back(e);
      rec(g.edge(e).source);
      w.pop_back();
    }
  };
  rec(v);
  return out;
}

inline VertexId word_source(const KGraph& g, VertexId range, const Word& w) {
  return w.empty() ? range : g.edge(w.back()).source;
}

struct RawPath {
  VertexId range;
  Word word;
  std::vector<unsigned> degree;
};

inline RawPath raw(const KGraph& g, const hrg::Path& p) {
  std::vector<unsigned> d(static_cast<std::size_t>(g.rank()), 0);
  for (EdgeId e : p.word) ++d[static_cast<std::size_t>(g.edge(e).color - 1)];
  return {p.range, p.word, d};
}

// Pairs (alpha, beta) of raw words with mu alpha = nu beta, of joined degree.
inline std::vector<std::pair<Word, Word>> lambda_min(const KGraph& g, const RawPath& mu, const RawPath& nu) {
  std::vector<unsigned> m(mu.degree.size());
  std::vector<unsigned> da(m.size()), db(m.size());
  for (std::size_t i = 0; i < m.size(); ++i) {
    m[i] = std::max(mu.degree[i], nu.degree[i]);
    da[i] = m[i] - mu.degree[i];
    db[i] = m[i] - nu.degree[i];
  }
  std::vector<std::pair<Word, Word>> out;
  auto as = sorted_words(g, word_source(g, mu.range, mu.word), da);
  auto bs = sorted_words(g, word_source(g, nu.range, nu.word), db);
  for (auto& a : as) {
    Word left = mu.word;
    left.insert(left.end(), a.begin(), a.end());
    auto cls = word_class(g, left);
    for (auto& b : bs) {
      Word right = nu.word;
      right.insert(right.end(), b.begin(), b.end());
      if (cls.count(right)) out.emplace_back(a, b);
    }
  }
  return out;
}

// Direct definition, checked over all mu with d(mu) <= D + (1,...,1).
inline bool is_exhaustive(const KGraph& g, VertexId v, const std::vector<RawPath>& E) {
  std::vector<unsigned> bound(static_cast<std::size_t>(g.rank()), 1);
  for (auto& nu : E)
    for (std::size_t i = 0; i < bound.size(); ++i) bound[i] = std::max(bound[i], nu.degree[i] + 1);
  std::vector<std::vector<unsigned>> degs{{}};
  for (unsigned b : bound) {
    std::vector<std::vector<unsigned>> next;
    for (auto& d : degs)
      for (unsigned x = 0; x <= b; ++x) {
        auto e = d;
        e.push_back(x);
        next.push_back(e);
      }
    degs = next;
  }
  for (auto& d : degs) {
    for (auto& w : sorted_words(g, v, d)) {
      RawPath mu{v, w, d};
      bool hit = false;
      for (auto& nu : E)
        if (!lambda_min(g, mu, nu).empty()) {
          hit = true;
          break;
        }
      if (!hit) return false;
    }
  }
  return true;
}

// Random 2-graph with the given number of vertices and at most max_per_color
// edges of each color. Squares are a random bijection for every (range,
// source) block; any such choice is a valid 2-graph.
inline std::optional<KGraph> random_2graph(std::mt19937_64& rng, int vertices, int max_per_color) {
  hrg::GraphSpec spec;
  spec.rank = 2;
  for (int i = 0; i < vertices; ++i) spec.vertices.push_back("v" + std::to_string(i));
  std::uniform_int_distribution<int> vd(0, vertices - 1), cnt(1, max_per_color);
  for (int color = 1; color <= 2; ++color) {
    int n = cnt(rng);
    for (int i = 0; i < n; ++i)
      spec.edges.push_back({(color == 1 ? "a" : "b") + std::to_string(i), color,
                            spec.vertices[static_cast<std::size_t>(vd(rng))],
                            spec.vertices[static_cast<std::size_t>(vd(rng))]});
  }
  auto g0 = KGraph::build(spec);
  // Group left pairs (color 1 then 2) and right pairs (2 then 1) by endpoints.
  std::map<std::pair<VertexId, VertexId>, std::vector<std::pair<EdgeId, EdgeId>>> left, right;
  for (EdgeId a = 0; a < g0.num_edges(); ++a)
    for (EdgeId b = 0; b < g0.num_edges(); ++b) {
      const auto &ea = g0.edge(a), &eb = g0.edge(b);
      if (ea.source != eb.range) continue;
      if (ea.color == 1 && eb.color == 2) left[{ea.range, eb.source}].push_back({a, b});
      if (ea.color == 2 && eb.color == 1) right[{ea.range, eb.source}].push_back({a, b});
    }
  for (auto& [k, l] : left)
    if (right[k].size() != l.size()) return std::nullopt;
  for (auto& [k, r] : right)
    if (left[k].size() != r.size()) return std::nullopt;
  for (auto& [k, l] : left) {
    auto r = right[k];
    std::shuffle(r.begin(), r.end(), rng);
    for (std::size_t i = 0; i < l.size(); ++i)
      spec.squares.push_back({g0.edge(l[i].first).name, g0.edge(l[i].second).name,
                              g0.edge(r[i].first).name, g0.edge(r[i].second).name});
  }
  return KGraph::build(spec);
}

inline KGraph random_2graph_retry(std::mt19937_64& rng, int vertices, int max_per_color) {
  for (;;)
    if (auto g = random_2graph(rng, vertices, max_per_color)) return *g;
}

}  // namespace oracle
