#pragma once

#include <hrg/kgraph.hpp>

namespace fixture {

inline hrg::GraphSpec lambda2() {
  return {2, {"v"}, {{"f1", 1, "v", "v"}, {"f2", 1, "v", "v"}, {"e", 2, "v", "v"}},
          {{"f1", "e", "e", "f1"}, {"f2", "e", "e", "f2"}}};
}

inline hrg::GraphSpec lambda3() {
  return {2, {"v"}, {{"f1", 1, "v", "v"}, {"f2", 1, "v", "v"}, {"e", 2, "v", "v"}},
          {{"f1", "e", "e", "f2"}, {"f2", "e", "e", "f1"}}};
}

// Color 1: f1 f2, color 2: e1 e2, rule e_i f_j = f_i e_j.
inline hrg::GraphSpec flip() {
  return {2,
          {"v"},
          {{"f1", 1, "v", "v"}, {"f2", 1, "v", "v"}, {"e1", 2, "v", "v"}, {"e2", 2, "v", "v"}},
          {{"f1", "e1", "e1", "f1"}, {"f1", "e2", "e1", "f2"}, {"f2", "e1", "e2", "f1"}, {"f2", "e2", "e2", "f2"}}};
}

inline hrg::GraphSpec commuting() {
  return {2,
          {"v"},
          {{"f1", 1, "v", "v"}, {"f2", 1, "v", "v"}, {"e1", 2, "v", "v"}, {"e2", 2, "v", "v"}},
          {{"f1", "e1", "e1", "f1"}, {"f1", "e2", "e2", "f1"}, {"f2", "e1", "e1", "f2"}, {"f2", "e2", "e2", "f2"}}};
}

inline hrg::GraphSpec trivial3() {
  return {3, {"v"}, {{"a", 1, "v", "v"}, {"b", 2, "v", "v"}, {"c", 3, "v", "v"}},
          {{"a", "b", "b", "a"}, {"a", "c", "c", "a"}, {"b", "c", "c", "b"}}};
}

inline hrg::GraphSpec uv_graph() {
  return {2,
          {"u", "v"},
          {{"k", 1, "u", "v"}, {"e", 1, "u", "v"}, {"g", 1, "v", "u"}, {"f", 2, "u", "u"}, {"h", 2, "v", "v"}},
          {{"k", "f", "h", "e"}, {"e", "f", "h", "k"}, {"g", "h", "f", "g"}}};
}

inline hrg::GraphSpec eightvertex() {
  hrg::GraphSpec s;
  s.rank = 2;
  for (int i = 1; i <= 9; ++i) s.vertices.push_back("v" + std::to_string(i));
  s.edges = {{"e1", 1, "v2", "v1"}, {"e2", 1, "v8", "v1"}, {"e3", 1, "v3", "v5"}, {"e4", 1, "v4", "v6"},
             {"e5", 1, "v7", "v9"}, {"g1", 2, "v5", "v1"}, {"g2", 2, "v6", "v1"}, {"g3", 2, "v9", "v1"},
             {"g4", 2, "v3", "v2"}, {"g5", 2, "v4", "v2"}, {"g6", 2, "v7", "v8"}};
  s.squares = {{"e1", "g4", "g1", "e3"}, {"e1", "g5", "g2", "e4"}, {"e2", "g6", "g3", "e5"}};
  return s;
}

inline hrg::KGraph build(const hrg::GraphSpec& s) { return hrg::KGraph::build(s); }

}  // namespace fixture
