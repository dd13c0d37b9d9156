#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace hrg {

using VertexId = std::size_t;
using EdgeId = std::size_t;

class Degree {
 public:
  Degree() = default;
  explicit Degree(std::size_t rank) : c_(rank, 0) {}
  explicit Degree(std::vector<unsigned> c) : c_(std::move(c)) {}
  static Degree unit(std::size_t rank, int color);  // color is 1-based

  std::size_t rank() const { return c_.size(); }
  unsigned operator[](std::size_t i) const { return c_[i]; }
  unsigned& operator[](std::size_t i) { return c_[i]; }
  const std::vector<unsigned>& components() const { return c_; }
  unsigned total() const;
  bool is_zero() const { return total() == 0; }

  Degree operator+(const Degree& o) const;
  Degree operator-(const Degree& o) const;  // requires o <= *this
  Degree join(const Degree& o) const;
  Degree meet(const Degree& o) const;
  bool le(const Degree& o) const;  // componentwise

  friend bool operator==(const Degree& a, const Degree& b) { return a.c_ == b.c_; }
  friend bool operator!=(const Degree& a, const Degree& b) { return a.c_ != b.c_; }
  friend bool operator<(const Degree& a, const Degree& b) { return a.c_ < b.c_; }

  std::string to_string() const;

 private:
  std::vector<unsigned> c_;
};

struct Edge {
  std::string name;
  int color = 1;
  VertexId source = 0;
  VertexId range = 0;
};

// left = e f, right = f' e'; color(e) < color(f).
struct Square {
  EdgeId e, f, f2, e2;
};

// Raw description before index resolution.
struct GraphSpec {
  int rank = 1;
  std::vector<std::string> vertices;
  struct EdgeSpec {
    std::string name;
    int color;
    std::string source, range;
  };
  std::vector<EdgeSpec> edges;
  struct SquareSpec {
    std::string e, f, f2, e2;
  };
  std::vector<SquareSpec> squares;
};

class StructuralError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class PathError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Path {
  VertexId range = 0;
  VertexId source = 0;
  std::vector<EdgeId> word;  // normal form: colors nondecreasing
  Degree degree;

  bool is_vertex() const { return word.empty(); }
  friend bool operator==(const Path& a, const Path& b) {
    return a.range == b.range && a.source == b.source && a.word == b.word;
  }
  friend bool operator!=(const Path& a, const Path& b) { return !(a == b); }
  friend bool operator<(const Path& a, const Path& b) {
    if (a.range != b.range) return a.range < b.range;
    if (a.word != b.word) return a.word < b.word;
    return a.source < b.source;
  }
};

class KGraph {
 public:
  // Resolves names. Throws StructuralError on dangling endpoints, bad colors,
  // duplicate ids, or squares whose shape does not commute.
  static KGraph build(const GraphSpec& spec);

  int rank() const { return rank_; }
  std::size_t num_vertices() const { return vertices_.size(); }
  std::size_t num_edges() const { return edges_.size(); }
  const std::string& vertex_name(VertexId v) const { return vertices_.at(v); }
  const Edge& edge(EdgeId e) const { return edges_.at(e); }
  const std::vector<Edge>& edges() const { return edges_; }
  const std::vector<Square>& squares() const { return squares_; }
  std::optional<VertexId> find_vertex(const std::string& name) const;
  std::optional<EdgeId> find_edge(const std::string& name) const;
  VertexId vertex(const std::string& name) const;
  EdgeId edge_id(const std::string& name) const;

  // Edges of the given color with range v (vΛ^{e_i}).
  const std::vector<EdgeId>& edges_into(VertexId v, int color) const;
  std::vector<EdgeId> edges_into(VertexId v) const;
  bool has_sources() const;

  // Square lookup: (e,f) -> (f',e') and back. First match in declaration order.
  std::optional<std::pair<EdgeId, EdgeId>> forward(EdgeId e, EdgeId f) const;
  std::optional<std::pair<EdgeId, EdgeId>> backward(EdgeId f2, EdgeId e2) const;

  GraphSpec to_spec() const;

  Path vertex_path(VertexId v) const;
  Path edge_path(EdgeId e) const;
  std::string path_name(const Path& p) const;  // "v" or "e1.f2"
  Path parse_path(const std::string& text) const;  // inverse of path_name

 private:
  int rank_ = 1;
  std::vector<std::string> vertices_;
  std::vector<Edge> edges_;
  std::vector<Square> squares_;
  std::map<std::string, VertexId> vertex_index_;
  std::map<std::string, EdgeId> edge_index_;
  std::vector<std::vector<std::vector<EdgeId>>> into_;  // [v][color-1]
  std::map<std::pair<EdgeId, EdgeId>, std::pair<EdgeId, EdgeId>> fwd_, bwd_;
};

struct ValidationIssue {
  std::string kind;     // missing-square | duplicate-square | not-bijective | associativity
  std::string message;
  std::vector<std::string> witness;  // edge names
};

struct ValidationReport {
  bool valid = true;
  std::vector<ValidationIssue> issues;
};

ValidationReport validate_kgraph(const KGraph& g);

// Normal form of an arbitrary composable word (requires complete squares).
Path normalize_word(const KGraph& g, VertexId range, const std::vector<EdgeId>& word);
Path compose(const KGraph& g, const Path& p, const Path& q);
std::pair<Path, Path> factorize(const KGraph& g, const Path& p, const Degree& n);
std::vector<Path> enumerate_paths(const KGraph& g, VertexId v, const Degree& n);
// All degrees m <= bound, lexicographic.
std::vector<Degree> degrees_upto(const Degree& bound);
// All paths at v with degree <= bound, grouped by degree in lexicographic order.
std::vector<Path> enumerate_paths_upto(const KGraph& g, VertexId v, const Degree& bound);
// True iff p = q r for some r.
bool is_prefix(const KGraph& g, const Path& q, const Path& p);

std::vector<std::pair<Path, Path>> lambda_min(const KGraph& g, const Path& mu, const Path& nu);

struct ExhaustiveResult {
  bool exhaustive = false;
  std::optional<Path> witness;  // set when not exhaustive
};

ExhaustiveResult is_exhaustive(const KGraph& g, VertexId v, const std::vector<Path>& E);

}  // namespace hrg
