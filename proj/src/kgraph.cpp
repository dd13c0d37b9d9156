#include "hrg/kgraph.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <set>
#include <sstream>

namespace hrg {

Degree Degree::unit(std::size_t rank, int color) {
  Degree d(rank);
  d.c_.at(static_cast<std::size_t>(color - 1)) = 1;
  return d;
}

unsigned Degree::total() const {
  unsigned t = 0;
  for (unsigned x : c_) t += x;
  return t;
}

Degree Degree::operator+(const Degree& o) const {
  Degree r = *this;
  for (std::size_t i = 0; i < c_.size(); ++i) r.c_[i] += o.c_[i];
  return r;
}

Degree Degree::operator-(const Degree& o) const {
  if (!o.le(*this)) throw PathError("degree " + o.to_string() + " exceeds " + to_string());
  Degree r = *this;
  for (std::size_t i = 0; i < c_.size(); ++i) r.c_[i] -= o.c_[i];
  return r;
}

Degree Degree::join(const Degree& o) const {
  Degree r = *this;
  for (std::size_t i = 0; i < c_.size(); ++i) r.c_[i] = std::max(c_[i], o.c_[i]);
  return r;
}

Degree Degree::meet(const Degree& o) const {
  Degree r = *this;
  for (std::size_t i = 0; i < c_.size(); ++i) r.c_[i] = std::min(c_[i], o.c_[i]);
  return r;
}

bool Degree::le(const Degree& o) const {
  if (o.c_.size() != c_.size()) return false;
  for (std::size_t i = 0; i < c_.size(); ++i)
    if (c_[i] > o.c_[i]) return false;
  return true;
}

std::string Degree::to_string() const {
  std::string s = "(";
  for (std::size_t i = 0; i < c_.size(); ++i) s += (i ? "," : "") + std::to_string(c_[i]);
  return s + ")";
}

KGraph KGraph::build(const GraphSpec& spec) {
  KGraph g;
  if (spec.rank < 1) throw StructuralError("rank must be at least 1");
  g.rank_ = spec.rank;
  for (auto& name : spec.vertices) {
    if (name.empty()) throw StructuralError("empty vertex name");
    if (!g.vertex_index_.emplace(name, g.vertices_.size()).second)
      throw StructuralError("duplicate vertex '" + name + "'");
    g.vertices_.push_back(name);
  }
  for (auto& es : spec.edges) {
    if (g.vertex_index_.count(es.name))
      throw StructuralError("edge '" + es.name + "' clashes with a vertex name");
    if (es.color < 1 || es.color > spec.rank)
      throw StructuralError("edge '" + es.name + "' has color " + std::to_string(es.color) +
                            " outside 1.." + std::to_string(spec.rank));
    auto s = g.find_vertex(es.source);
    auto r = g.find_vertex(es.range);
    if (!s) throw StructuralError("edge '" + es.name + "' has undeclared source '" + es.source + "'");
    if (!r) throw StructuralError("edge '" + es.name + "' has undeclared range '" + es.range + "'");
    if (!g.edge_index_.emplace(es.name, g.edges_.size()).second)
      throw StructuralError("duplicate edge '" + es.name + "'");
    g.edges_.push_back(Edge{es.name, es.color, *s, *r});
  }
  g.into_.assign(g.vertices_.size(), std::vector<std::vector<EdgeId>>(static_cast<std::size_t>(g.rank_)));
  for (EdgeId e = 0; e < g.edges_.size(); ++e)
    g.into_[g.edges_[e].range][static_cast<std::size_t>(g.edges_[e].color - 1)].push_back(e);

  for (auto& sq : spec.squares) {
    std::string text = sq.e + " " + sq.f + " = " + sq.f2 + " " + sq.e2;
    auto look = [&](const std::string& n) {
      auto id = g.find_edge(n);
      if (!id) throw StructuralError("square '" + text + "' names unknown edge '" + n + "'");
      return *id;
    };
    Square s{look(sq.e), look(sq.f), look(sq.f2), look(sq.e2)};
    const Edge &e = g.edges_[s.e], &f = g.edges_[s.f], &f2 = g.edges_[s.f2], &e2 = g.edges_[s.e2];
    if (e.color >= f.color)
      throw StructuralError("square '" + text + "': left side must have increasing colors");
    if (f2.color != f.color || e2.color != e.color)
      throw StructuralError("square '" + text + "': right side colors do not match left side");
    if (e.source != f.range) throw StructuralError("square '" + text + "': left side not composable");
    if (f2.source != e2.range) throw StructuralError("square '" + text + "': right side not composable");
    if (e.range != f2.range || f.source != e2.source)
      throw StructuralError("square '" + text + "': endpoints of the two sides differ");
    g.squares_.push_back(s);
    g.fwd_.emplace(std::make_pair(s.e, s.f), std::make_pair(s.f2, s.e2));
    g.bwd_.emplace(std::make_pair(s.f2, s.e2), std::make_pair(s.e, s.f));
  }
  return g;
}

std::optional<VertexId> KGraph::find_vertex(const std::string& name) const {
  auto it = vertex_index_.find(name);
  if (it == vertex_index_.end()) return std::nullopt;
  return it->second;
}

std::optional<EdgeId> KGraph::find_edge(const std::string& name) const {
  auto it = edge_index_.find(name);
  if (it == edge_index_.end()) return std::nullopt;
  return it->second;
}

VertexId KGraph::vertex(const std::string& name) const {
  auto v = find_vertex(name);
  if (!v) throw PathError("unknown vertex '" + name + "'");
  return *v;
}

EdgeId KGraph::edge_id(const std::string& name) const {
  auto e = find_edge(name);
  if (!e) throw PathError("unknown edge '" + name + "'");
  return *e;
}

const std::vector<EdgeId>& KGraph::edges_into(VertexId v, int color) const {
  return into_.at(v).at(static_cast<std::size_t>(color - 1));
}

std::vector<EdgeId> KGraph::edges_into(VertexId v) const {
  std::vector<EdgeId> out;
  for (auto& bucket : into_.at(v)) out.insert(out.end(), bucket.begin(), bucket.end());
  return out;
}

bool KGraph::has_sources() const {
  for (auto& per_vertex : into_)
    for (auto& bucket : per_vertex)
      if (bucket.empty()) return true;
  return false;
}

std::optional<std::pair<EdgeId, EdgeId>> KGraph::forward(EdgeId e, EdgeId f) const {
  auto it = fwd_.find({e, f});
  if (it == fwd_.end()) return std::nullopt;
  return it->second;
}

std::optional<std::pair<EdgeId, EdgeId>> KGraph::backward(EdgeId f2, EdgeId e2) const {
  auto it = bwd_.find({f2, e2});
  if (it == bwd_.end()) return std::nullopt;
  return it->second;
}

GraphSpec KGraph::to_spec() const {
  GraphSpec s;
  s.rank = rank_;
  s.vertices = vertices_;
  for (auto& e : edges_) s.edges.push_back({e.name, e.color, vertices_[e.source], vertices_[e.range]});
  for (auto& q : squares_)
    s.squares.push_back({edges_[q.e].name, edges_[q.f].name, edges_[q.f2].name, edges_[q.e2].name});
  return s;
}

Path KGraph::vertex_path(VertexId v) const {
  if (v >= vertices_.size()) throw PathError("vertex index out of range");
  return Path{v, v, {}, Degree(static_cast<std::size_t>(rank_))};
}

Path KGraph::edge_path(EdgeId e) const {
  const Edge& ed = edges_.at(e);
  return Path{ed.range, ed.source, {e}, Degree::unit(static_cast<std::size_t>(rank_), ed.color)};
}

std::string KGraph::path_name(const Path& p) const {
  if (p.word.empty()) return vertices_.at(p.range);
  std::string s;
  for (std::size_t i = 0; i < p.word.size(); ++i) s += (i ? "." : "") + edges_.at(p.word[i]).name;
  return s;
}

Path KGraph::parse_path(const std::string& text) const {
  if (auto v = find_vertex(text)) return vertex_path(*v);
  std::vector<EdgeId> word;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, '.')) word.push_back(edge_id(tok));
  if (word.empty()) throw PathError("empty path");
  return normalize_word(*this, edges_[word[0]].range, word);
}

namespace {

std::pair<EdgeId, EdgeId> pair_names_check(const KGraph& g, EdgeId a, EdgeId b, bool fwd) {
  auto r = fwd ? g.forward(a, b) : g.backward(a, b);
  if (!r)
    throw PathError("no square with " + std::string(fwd ? "left" : "right") + " side " +
                    g.edge(a).name + " " + g.edge(b).name);
  return *r;
}

Path make_path(const KGraph& g, VertexId range, std::vector<EdgeId> word) {
  Path p{range, range, std::move(word), Degree(static_cast<std::size_t>(g.rank()))};
  for (EdgeId e : p.word) p.degree[static_cast<std::size_t>(g.edge(e).color - 1)] += 1;
  if (!p.word.empty()) p.source = g.edge(p.word.back()).source;
  return p;
}

void check_composable(const KGraph& g, VertexId range, const std::vector<EdgeId>& word) {
  VertexId at = range;
  for (EdgeId e : word) {
    if (g.edge(e).range != at)
      throw PathError("edge " + g.edge(e).name + " does not compose at " + g.vertex_name(at));
    at = g.edge(e).source;
  }
}

// Bubble sort by color through squares. leftmost=false scans from the right.
std::vector<EdgeId> sort_colors(const KGraph& g, std::vector<EdgeId> w, bool leftmost) {
  for (;;) {
    std::optional<std::size_t> pos;
    for (std::size_t k = 0; k + 1 < w.size(); ++k) {
      std::size_t i = leftmost ? k : w.size() - 2 - k;
      if (g.edge(w[i]).color > g.edge(w[i + 1]).color) {
        pos = i;
        break;
      }
    }
    if (!pos) return w;
    auto [e, f] = pair_names_check(g, w[*pos], w[*pos + 1], false);
    w[*pos] = e;
    w[*pos + 1] = f;
  }
}

}  // namespace

Path normalize_word(const KGraph& g, VertexId range, const std::vector<EdgeId>& word) {
  check_composable(g, range, word);
  return make_path(g, range, sort_colors(g, word, true));
}

Path compose(const KGraph& g, const Path& p, const Path& q) {
  if (p.source != q.range)
    throw PathError("cannot compose " + g.path_name(p) + " with " + g.path_name(q));
  std::vector<EdgeId> w = p.word;
  w.insert(w.end(), q.word.begin(), q.word.end());
  return make_path(g, p.range, sort_colors(g, std::move(w), true));
}

std::pair<Path, Path> factorize(const KGraph& g, const Path& p, const Degree& n) {
  if (!n.le(p.degree))
    throw PathError("cannot factorize " + g.path_name(p) + " at " + n.to_string());
  std::vector<int> target;
  for (std::size_t i = 0; i < n.rank(); ++i) target.insert(target.end(), n[i], static_cast<int>(i + 1));
  for (std::size_t i = 0; i < n.rank(); ++i)
    target.insert(target.end(), p.degree[i] - n[i], static_cast<int>(i + 1));
  std::vector<EdgeId> w = p.word;
  for (std::size_t pos = 0; pos < w.size(); ++pos) {
    std::size_t j = pos;
    while (g.edge(w[j]).color != target[pos]) ++j;
    for (; j > pos; --j) {
      int left = g.edge(w[j - 1]).color;
      auto swapped = left < target[pos] ? pair_names_check(g, w[j - 1], w[j], true)
                                        : pair_names_check(g, w[j - 1], w[j], false);
      w[j - 1] = swapped.first;
      w[j] = swapped.second;
    }
  }
  std::size_t cut = n.total();
  Path pre = make_path(g, p.range, std::vector<EdgeId>(w.begin(), w.begin() + static_cast<long>(cut)));
  VertexId mid = cut == 0 ? p.range : g.edge(w[cut - 1]).source;
  Path suf = make_path(g, mid, std::vector<EdgeId>(w.begin() + static_cast<long>(cut), w.end()));
  return {pre, suf};
}

std::vector<Path> enumerate_paths(const KGraph& g, VertexId v, const Degree& n) {
  std::vector<Path> out;
  std::vector<EdgeId> word;
  std::vector<int> colors;
  for (std::size_t i = 0; i < n.rank(); ++i) colors.insert(colors.end(), n[i], static_cast<int>(i + 1));
  std::function<void(VertexId)> dfs = [&](VertexId at) {
    if (word.size() == colors.size()) {
      out.push_back(make_path(g, v, word));
      return;
    }
    for (EdgeId e : g.edges_into(at, colors[word.size()])) {
      word.push_back(e);
      dfs(g.edge(e).source);
      word.pop_back();
    }
  };
  dfs(v);
  return out;
}

std::vector<Degree> degrees_upto(const Degree& bound) {
  std::vector<Degree> out{Degree(bound.rank())};
  for (std::size_t i = 0; i < bound.rank(); ++i) {
    std::vector<Degree> next;
    for (auto& d : out)
      for (unsigned x = 0; x <= bound[i]; ++x) {
        Degree e = d;
        e[i] = x;
        next.push_back(e);
      }
    out = std::move(next);
  }
  return out;
}

std::vector<Path> enumerate_paths_upto(const KGraph& g, VertexId v, const Degree& bound) {
  std::vector<Path> out;
  for (auto& m : degrees_upto(bound)) {
    auto layer = enumerate_paths(g, v, m);
    out.insert(out.end(), layer.begin(), layer.end());
  }
  return out;
}

bool is_prefix(const KGraph& g, const Path& q, const Path& p) {
  if (q.range != p.range || !q.degree.le(p.degree)) return false;
  return factorize(g, p, q.degree).first == q;
}

std::vector<std::pair<Path, Path>> lambda_min(const KGraph& g, const Path& mu, const Path& nu) {
  if (mu.range != nu.range)
    throw PathError("lambda_min of " + g.path_name(mu) + " and " + g.path_name(nu) +
                    ": different ranges");
  Degree m = mu.degree.join(nu.degree);
  std::vector<std::pair<Path, Path>> out;
  for (auto& alpha : enumerate_paths(g, mu.source, m - mu.degree)) {
    auto [pre, beta] = factorize(g, compose(g, mu, alpha), nu.degree);
    if (pre == nu) out.emplace_back(alpha, beta);
  }
  std::sort(out.begin(), out.end());
  return out;
}

ExhaustiveResult is_exhaustive(const KGraph& g, VertexId v, const std::vector<Path>& E) {
  auto rank = static_cast<std::size_t>(g.rank());
  Degree D(rank);
  for (auto& nu : E) {
    if (nu.range != v)
      throw PathError("path " + g.path_name(nu) + " does not have range " + g.vertex_name(v));
    D = D.join(nu.degree);
  }

  auto extend_witness = [&](Path w) {
    if (w.is_vertex())
      for (int c = 1; c <= g.rank(); ++c)
        if (!g.edges_into(w.source, c).empty()) return compose(g, w, g.edge_path(g.edges_into(w.source, c)[0]));
    return w;
  };

  for (auto& pi : enumerate_paths_upto(g, v, D)) {
    const Degree& c = pi.degree;
    std::vector<int> J;
    for (std::size_t i = 0; i < rank; ++i)
      if (c[i] == D[i]) J.push_back(static_cast<int>(i + 1));

    std::set<Path> gamma;
    for (auto& nu : E) {
      Degree need(rank);
      for (std::size_t i = 0; i < rank; ++i) need[i] = nu.degree[i] > c[i] ? nu.degree[i] - c[i] : 0;
      for (auto& gm : enumerate_paths(g, pi.source, need)) {
        Path full = compose(g, pi, gm);
        if (factorize(g, full, nu.degree).first == nu) gamma.insert(gm);
      }
    }
    if (gamma.empty()) return {false, extend_witness(pi)};

    // States: (vertex, surviving transported completions); BFS over edges in
    // saturated colors.
    using State = std::pair<VertexId, std::set<Path>>;
    std::set<State> seen;
    std::deque<std::pair<State, Path>> queue;
    State start{pi.source, gamma};
    seen.insert(start);
    queue.emplace_back(start, g.vertex_path(pi.source));
    while (!queue.empty()) {
      auto [state, sigma] = queue.front();
      queue.pop_front();
      for (int color : J) {
        for (EdgeId e : g.edges_into(state.first, color)) {
          Path ep = g.edge_path(e);
          std::set<Path> next;
          for (auto& alpha : state.second)
            for (auto& [a2, b2] : lambda_min(g, ep, alpha)) next.insert(a2);
          Path sigma2 = compose(g, sigma, ep);
          if (next.empty()) return {false, compose(g, pi, sigma2)};
          State ns{g.edge(e).source, std::move(next)};
          if (seen.insert(ns).second) queue.emplace_back(std::move(ns), std::move(sigma2));
        }
      }
    }
  }
  return {true, std::nullopt};
}

ValidationReport validate_kgraph(const KGraph& g) {
  ValidationReport rep;
  auto name = [&](EdgeId e) { return g.edge(e).name; };
  std::map<std::pair<EdgeId, EdgeId>, int> left_count, right_count;
  for (auto& s : g.squares()) {
    ++left_count[{s.e, s.f}];
    ++right_count[{s.f2, s.e2}];
  }
  for (EdgeId e = 0; e < g.num_edges(); ++e) {
    for (EdgeId f = 0; f < g.num_edges(); ++f) {
      const Edge &a = g.edge(e), &b = g.edge(f);
      if (a.source != b.range || a.color == b.color) continue;
      if (a.color < b.color) {
        int n = left_count[{e, f}];
        if (n == 0)
          rep.issues.push_back({"missing-square", "no square for pair (" + name(e) + "," + name(f) + ")",
                                {name(e), name(f)}});
        else if (n > 1)
          rep.issues.push_back({"duplicate-square",
                                "pair (" + name(e) + "," + name(f) + ") is the left side of " +
                                    std::to_string(n) + " squares",
                                {name(e), name(f)}});
      } else {
        int n = right_count[{e, f}];
        if (n != 1)
          rep.issues.push_back({"not-bijective",
                                "pair (" + name(e) + "," + name(f) + ") is the right side of " +
                                    std::to_string(n) + " squares",
                                {name(e), name(f)}});
      }
    }
  }
  if (rep.issues.empty() && g.rank() >= 3) {
    for (EdgeId a = 0; a < g.num_edges(); ++a)
      for (EdgeId b = 0; b < g.num_edges(); ++b)
        for (EdgeId c = 0; c < g.num_edges(); ++c) {
          int ca = g.edge(a).color, cb = g.edge(b).color, cc = g.edge(c).color;
          if (ca == cb || cb == cc || ca == cc) continue;
          if (g.edge(a).source != g.edge(b).range || g.edge(b).source != g.edge(c).range) continue;
          std::vector<EdgeId> w{a, b, c};
          if (sort_colors(g, w, true) != sort_colors(g, w, false)) {
            rep.issues.push_back({"associativity",
                                  "reorderings of " + name(a) + " " + name(b) + " " + name(c) + " disagree",
                                  {name(a), name(b), name(c)}});
          }
        }
  }
  rep.valid = rep.issues.empty();
  return rep;
}

}  // namespace hrg
