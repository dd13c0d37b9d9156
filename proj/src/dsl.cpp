#include "hrg/dsl.hpp"

#include <cctype>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace hrg {

ParseError::ParseError(std::string file, std::size_t line, std::size_t column, const std::string& message)
    : std::runtime_error(file + ":" + std::to_string(line) + ":" + std::to_string(column) + ": " + message),
      file_(std::move(file)),
      message_(message),
      line_(line),
      column_(column) {}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

namespace {

struct Line {
  std::size_t number;
  std::string text;  // comment stripped, right-trimmed
};

std::vector<Line> split_lines(const std::string& text) {
  std::vector<Line> out;
  std::istringstream in(text);
  std::string raw;
  std::size_t n = 0;
  while (std::getline(in, raw)) {
    ++n;
    if (auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
    while (!raw.empty() && std::isspace(static_cast<unsigned char>(raw.back()))) raw.pop_back();
    std::size_t start = raw.find_first_not_of(" \t\r");
    if (start == std::string::npos) continue;
    out.push_back({n, raw});
  }
  return out;
}

bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\''; }

// Exponent -> coefficient: a sum of terms coeff * var^exp.
using Poly = std::map<Rational, Scalar>;

Poly poly_mul(const Poly& a, const Poly& b) {
  Poly out;
  for (auto& [ea, ca] : a)
    for (auto& [eb, cb] : b) {
      Rational e = ea + eb;
      e.canonicalize();
      out[e] += ca * cb;
    }
  return out;
}

void poly_add(Poly& a, const Poly& b, bool negate) {
  for (auto& [e, c] : b) a[e] += negate ? -c : c;
}

Poly prune(Poly p) {
  for (auto it = p.begin(); it != p.end();) it = it->second.is_zero() ? p.erase(it) : std::next(it);
  return p;
}

class Cursor {
 public:
  Cursor(const std::string& file, const Line& line, std::size_t pos = 0) : file_(file), line_(line), pos_(pos) {}

  [[noreturn]] void error(const std::string& msg) const { throw ParseError(file_, line_.number, pos_ + 1, msg); }
  [[noreturn]] void error_at(std::size_t pos, const std::string& msg) const {
    throw ParseError(file_, line_.number, pos + 1, msg);
  }

  void skip_ws() {
    while (pos_ < text().size() && std::isspace(static_cast<unsigned char>(text()[pos_]))) ++pos_;
  }
  bool at_end() {
    skip_ws();
    return pos_ >= text().size();
  }
  char peek() {
    skip_ws();
    return pos_ < text().size() ? text()[pos_] : '\0';
  }
  bool eat(char c) {
    if (peek() != c) return false;
    ++pos_;
    return true;
  }
  bool eat_word(const std::string& w) {
    skip_ws();
    if (text().compare(pos_, w.size(), w) != 0) return false;
    std::size_t end = pos_ + w.size();
    if (end < text().size() && ident_char(text()[end]) && ident_char(w.back())) return false;
    pos_ = end;
    return true;
  }
  void expect(char c) {
    if (!eat(c)) error(std::string("expected '") + c + "'");
  }
  void expect_end() {
    if (!at_end()) error("unexpected '" + text().substr(pos_) + "'");
  }
  std::size_t pos() {
    skip_ws();
    return pos_;
  }

  std::string identifier() {
    skip_ws();
    std::size_t start = pos_;
    while (pos_ < text().size() && ident_char(text()[pos_])) ++pos_;
    if (start == pos_) error("expected an identifier");
    return text().substr(start, pos_ - start);
  }

  Integer integer() {
    skip_ws();
    std::size_t start = pos_;
    while (pos_ < text().size() && std::isdigit(static_cast<unsigned char>(text()[pos_]))) ++pos_;
    if (start == pos_) error("expected a number");
    return Integer(text().substr(start, pos_ - start));
  }

  Rational rational() {
    bool neg = eat('-');
    Rational q(integer());
    if (eat('/')) {
      Integer d = integer();
      if (d == 0) error("zero denominator");
      q /= Rational(d);
    }
    q.canonicalize();
    return neg ? Rational(-q) : q;
  }

  // exponent := integer | '(' rational ')'
  Rational exponent() {
    if (eat('(')) {
      Rational r = rational();
      expect(')');
      return r;
    }
    return Rational(integer());
  }

  // Expressions in at most one variable; var empty means constants only.
  Poly expr(const std::string& var) {
    Poly out;
    bool negate = eat('-');
    poly_add(out, term(var), negate);
    while (true) {
      if (eat('+'))
        poly_add(out, term(var), false);
      else if (eat('-'))
        poly_add(out, term(var), true);
      else
        break;
    }
    return prune(out);
  }

  Scalar constant() {
    std::size_t start = pos();
    Poly p = expr("");
    if (p.empty()) return Scalar();
    if (p.size() != 1 || p.begin()->first != 0) error_at(start, "expected a constant");
    return p.begin()->second;
  }

 private:
  const std::string& text() const { return line_.text; }

  Poly term(const std::string& var) {
    Poly out = factor(var);
    while (true) {
      if (eat('*')) {
        out = poly_mul(out, factor(var));
      } else if (peek() == '/') {
        std::size_t at = pos();
        ++pos_;
        Poly d = prune(factor(var));
        if (d.size() != 1 || d.begin()->first != 0 || !d.begin()->second.is_single_term())
          error_at(at, "can only divide by a single nonzero constant term");
        Scalar inv = Scalar(1) / d.begin()->second;
        for (auto& [e, c] : out) c *= inv;
      } else {
        break;
      }
    }
    return out;
  }

  Poly factor(const std::string& var) {
    std::size_t start = pos();
    if (eat('-')) {
      Poly p = factor(var);
      for (auto& [e, c] : p) c = -c;
      return p;
    }
    if (eat('(')) {
      Poly p = expr(var);
      expect(')');
      return p;
    }
    if (eat_word("sqrt")) {
      expect('(');
      Rational q = rational();
      expect(')');
      if (q < 0) error_at(start, "square root of a negative number");
      return {{Rational(0), Scalar::sqrt(q)}};
    }
    if (!var.empty() && eat_word(var)) {
      Rational r = 1;
      if (eat('^')) r = exponent();
      r.canonicalize();
      return {{r, Scalar(1)}};
    }
    if (std::isdigit(static_cast<unsigned char>(peek()))) {
      Integer n = integer();
      if (eat('^')) {
        Rational r = exponent();
        if (n <= 0) error_at(start, "fractional powers need a positive base");
        return {{Rational(0), Scalar::root(Rational(n), r)}};
      }
      return {{Rational(0), Scalar(Rational(n))}};
    }
    error("expected a number, sqrt(...), or " + (var.empty() ? std::string("a constant") : var));
  }

  const std::string& file_;
  const Line& line_;
  std::size_t pos_;
};

Map1D to_map(const Poly& p, Cursor& cur, std::size_t start) {
  Scalar b;
  std::vector<std::pair<Rational, Scalar>> var_terms;
  for (auto& [e, c] : p) {
    if (e == 0)
      b = c;
    else
      var_terms.emplace_back(e, c);
  }
  if (var_terms.empty()) cur.error_at(start, "constant maps are not invertible");
  if (var_terms.size() > 1) cur.error_at(start, "expected p*x + q or c*x^r");
  auto& [r, a] = var_terms.front();
  try {
    if (r == 1) return Map1D::affine(a, b);
    if (!b.is_zero()) cur.error_at(start, "a monomial map c*x^r cannot carry an offset");
    if (r < 0) cur.error_at(start, "monomial exponent must be positive");
    if (a.sign() <= 0) cur.error_at(start, "monomial coefficient must be positive");
    return Map1D::monomial(a, r);
  } catch (const std::invalid_argument& ex) {
    cur.error_at(start, ex.what());
  }
}

const char* kVars[] = {"x", "y"};

Box box(Cursor& cur) {
  std::vector<Interval> sides;
  do {
    std::size_t start = cur.pos();
    cur.expect('[');
    Scalar lo = cur.constant();
    cur.expect(',');
    Scalar hi = cur.constant();
    cur.expect(']');
    if (compare(lo, hi) >= 0) cur.error_at(start, "interval must have positive length");
    sides.push_back({lo, hi});
  } while (cur.eat('x'));
  return Box(std::move(sides));
}

BoxSet box_union(Cursor& cur, std::size_t dim) {
  if (cur.eat('{')) {
    cur.expect('}');
    return BoxSet(dim);
  }
  std::vector<Box> boxes;
  do {
    std::size_t start = cur.pos();
    Box b = box(cur);
    if (b.dim() != dim) cur.error_at(start, "expected a box of dimension " + std::to_string(dim));
    boxes.push_back(std::move(b));
  } while (cur.eat('U'));
  return BoxSet::of(dim, boxes);
}

MapVec map_tuple(Cursor& cur, std::size_t dim) {
  cur.expect('(');
  MapVec out;
  for (std::size_t i = 0; i < dim; ++i) {
    if (i) cur.expect(',');
    std::size_t start = cur.pos();
    Poly p = cur.expr(kVars[i]);
    out.push_back(to_map(p, cur, start));
  }
  cur.expect(')');
  return out;
}

bool is_header(const std::string& text, const std::string& word) {
  return text.compare(0, word.size(), word) == 0 &&
         (text.size() == word.size() || std::isspace(static_cast<unsigned char>(text[word.size()])));
}

}  // namespace

GraphSpec parse_graph_text(const std::string& text, const std::string& file) {
  GraphSpec spec;
  std::optional<int> rank;
  std::string section;
  std::set<std::string> names, vertices, edges;
  int max_color = 0;
  for (auto& line : split_lines(text)) {
    Cursor cur(file, line);
    auto known = [&](const std::set<std::string>& ids, const char* what) {
      std::size_t at = cur.pos();
      std::string id = cur.identifier();
      if (!ids.count(id)) cur.error_at(at, std::string("unknown ") + what + " '" + id + "'");
      return id;
    };
    if (is_header(line.text, "RANK")) {
      cur.eat_word("RANK");
      Integer r = cur.integer();
      cur.expect_end();
      if (r < 1 || r > 16) cur.error("rank must be between 1 and 16");
      rank = static_cast<int>(r.get_si());
      continue;
    }
    if (line.text == "VERTICES" || line.text == "EDGES" || line.text == "SQUARES") {
      section = line.text;
      continue;
    }
    if (section.empty()) cur.error("expected RANK, VERTICES, EDGES or SQUARES");
    if (section == "VERTICES") {
      while (!cur.at_end()) {
        std::size_t at = cur.pos();
        std::string v = cur.identifier();
        if (!names.insert(v).second) cur.error_at(at, "duplicate id '" + v + "'");
        vertices.insert(v);
        spec.vertices.push_back(v);
      }
    } else if (section == "EDGES") {
      std::size_t at = cur.pos();
      std::string id = cur.identifier();
      if (!names.insert(id).second) cur.error_at(at, "duplicate id '" + id + "'");
      std::size_t color_at = cur.pos();
      Integer color = cur.integer();
      if (color < 1 || color > 16) cur.error_at(color_at, "color must be between 1 and 16");
      std::string src = known(vertices, "vertex");
      std::string rng = known(vertices, "vertex");
      cur.expect_end();
      edges.insert(id);
      spec.edges.push_back({id, static_cast<int>(color.get_si()), src, rng});
      max_color = std::max(max_color, static_cast<int>(color.get_si()));
    } else {
      std::string e = known(edges, "edge");
      std::string f = known(edges, "edge");
      cur.expect('=');
      std::string f2 = known(edges, "edge");
      std::string e2 = known(edges, "edge");
      cur.expect_end();
      spec.squares.push_back({e, f, f2, e2});
    }
  }
  spec.rank = rank.value_or(std::max(1, max_color));
  return spec;
}

KGraph parse_graph_file(const std::filesystem::path& path) {
  return KGraph::build(parse_graph_text(read_file(path), path.string()));
}

std::string write_graph(const KGraph& g) {
  std::string out = "RANK " + std::to_string(g.rank()) + "\nVERTICES\n";
  for (VertexId v = 0; v < g.num_vertices(); ++v) out += g.vertex_name(v) + "\n";
  out += "EDGES\n";
  for (auto& e : g.edges())
    out += e.name + " " + std::to_string(e.color) + " " + g.vertex_name(e.source) + " " + g.vertex_name(e.range) + "\n";
  out += "SQUARES\n";
  for (auto& s : g.squares())
    out += g.edge(s.e).name + " " + g.edge(s.f).name + " = " + g.edge(s.f2).name + " " + g.edge(s.e2).name + "\n";
  return out;
}

namespace {

ExhaustiveSet exhaustive_line(Cursor& cur, const KGraph& g) {
  std::size_t at = cur.pos();
  std::string v = cur.identifier();
  auto vid = g.find_vertex(v);
  if (!vid) cur.error_at(at, "unknown vertex '" + v + "'");
  cur.expect(':');
  ExhaustiveSet s{*vid, {}};
  while (!cur.at_end()) {
    std::size_t eat = cur.pos();
    std::string e = cur.identifier();
    auto eid = g.find_edge(e);
    if (!eid) cur.error_at(eat, "unknown edge '" + e + "'");
    if (g.edge(*eid).range != *vid) cur.error_at(eat, "edge '" + e + "' does not end at " + v);
    s.edges.push_back(*eid);
  }
  std::sort(s.edges.begin(), s.edges.end());
  s.edges.erase(std::unique(s.edges.begin(), s.edges.end()), s.edges.end());
  return s;
}

}  // namespace

IntervalBranchingSystem parse_bs_text(const std::string& text, const KGraph& g, const std::string& file) {
  IntervalBranchingSystem bs{g, 1, {}, {}, {}};
  std::vector<std::optional<BoxSet>> domains(g.num_vertices());
  std::vector<std::vector<Piece>> pieces(g.num_edges());
  std::vector<bool> has_map(g.num_edges(), false);
  std::string section;
  bool dim_fixed = false;
  std::size_t last_line = 0;
  for (auto& line : split_lines(text)) {
    last_line = line.number;
    Cursor cur(file, line);
    if (is_header(line.text, "GRAPH")) continue;
    if (is_header(line.text, "DIM")) {
      cur.eat_word("DIM");
      Integer d = cur.integer();
      cur.expect_end();
      if (d != 1 && d != 2) cur.error("dimension must be 1 or 2");
      if (dim_fixed) cur.error("DIM must come before DOMAIN and MAPS");
      bs.dim = d.get_ui();
      continue;
    }
    if (line.text == "DOMAIN" || line.text == "MAPS" || line.text == "EXHAUSTIVE") {
      section = line.text;
      dim_fixed = true;
      continue;
    }
    if (section.empty()) cur.error("expected GRAPH, DIM, DOMAIN, MAPS or EXHAUSTIVE");
    if (section == "DOMAIN") {
      std::size_t at = cur.pos();
      std::string v = cur.identifier();
      auto vid = g.find_vertex(v);
      if (!vid) cur.error_at(at, "unknown vertex '" + v + "'");
      if (domains[*vid]) cur.error_at(at, "second DOMAIN entry for '" + v + "'");
      cur.expect(':');
      domains[*vid] = box_union(cur, bs.dim);
      cur.expect_end();
    } else if (section == "MAPS") {
      std::size_t at = cur.pos();
      std::string e = cur.identifier();
      auto eid = g.find_edge(e);
      if (!eid) cur.error_at(at, "unknown edge '" + e + "'");
      cur.expect(':');
      std::size_t box_at = cur.pos();
      Box b = box(cur);
      if (b.dim() != bs.dim) cur.error_at(box_at, "expected a box of dimension " + std::to_string(bs.dim));
      cur.expect('-');
      cur.expect('>');
      MapVec m = map_tuple(cur, bs.dim);
      cur.expect_end();
      pieces[*eid].push_back({b, std::move(m)});
      has_map[*eid] = true;
    } else {
      bs.exhaustive.push_back(exhaustive_line(cur, g));
    }
  }
  Line end{last_line + 1, ""};
  Cursor tail(file, end);
  for (VertexId v = 0; v < g.num_vertices(); ++v) {
    if (!domains[v]) tail.error("no DOMAIN entry for vertex '" + g.vertex_name(v) + "'");
    bs.domains.push_back(*domains[v]);
  }
  for (EdgeId e = 0; e < g.num_edges(); ++e) {
    if (!has_map[e]) tail.error("no MAPS entry for edge '" + g.edge(e).name + "'");
    bs.maps.emplace_back(bs.dim, std::move(pieces[e]));
  }
  return bs;
}

IntervalBranchingSystem parse_bs_file(const std::filesystem::path& path) {
  std::string text = read_file(path);
  std::optional<std::filesystem::path> graph;
  for (auto& line : split_lines(text))
    if (is_header(line.text, "GRAPH")) {
      Cursor cur(path.string(), line);
      cur.eat_word("GRAPH");
      std::string rest = line.text.substr(cur.pos());
      if (rest.empty()) cur.error("expected a graph file name");
      graph = path.parent_path() / rest;
      break;
    }
  if (!graph) throw ParseError(path.string(), 1, 1, "missing GRAPH line");
  return parse_bs_text(text, parse_graph_file(*graph), path.string());
}

std::string write_bs(const IntervalBranchingSystem& bs, const std::string& graph_file) {
  const KGraph& g = bs.graph;
  std::string out = "GRAPH " + graph_file + "\nDIM " + std::to_string(bs.dim) + "\nDOMAIN\n";
  for (VertexId v = 0; v < g.num_vertices(); ++v) {
    std::string d = bs.domains[v].is_null() ? "{}" : bs.domains[v].to_string();
    out += g.vertex_name(v) + ": " + d + "\n";
  }
  out += "MAPS\n";
  for (EdgeId e = 0; e < g.num_edges(); ++e)
    for (auto& p : bs.maps[e].pieces()) out += g.edge(e).name + ": " + p.domain.to_string() + " -> " + mapvec_to_string(p.maps) + "\n";
  if (!bs.exhaustive.empty()) {
    out += "EXHAUSTIVE\n";
    for (auto& s : bs.exhaustive) {
      out += g.vertex_name(s.vertex) + ":";
      for (EdgeId e : s.edges) out += " " + g.edge(e).name;
      out += "\n";
    }
  }
  return out;
}

Map1D parse_map1d(const std::string& text, const std::string& var) {
  Line line{1, text};
  Cursor cur("<expr>", line);
  std::size_t start = cur.pos();
  Poly p = cur.expr(var);
  cur.expect_end();
  return to_map(p, cur, start);
}

Box parse_box(const std::string& text) {
  Line line{1, text};
  Cursor cur("<box>", line);
  Box b = box(cur);
  cur.expect_end();
  return b;
}

std::vector<ExhaustiveSet> parse_exhaustive_text(const std::string& text, const KGraph& g, const std::string& file) {
  std::vector<ExhaustiveSet> out;
  for (auto& line : split_lines(text)) {
    if (line.text == "EXHAUSTIVE") continue;
    Cursor cur(file, line);
    out.push_back(exhaustive_line(cur, g));
  }
  return out;
}

}  // namespace hrg
