#include "hrg/operator.hpp"

#include <algorithm>
#include <map>

namespace hrg {

namespace {

bool scalar_less(const Scalar& a, const Scalar& b) { return compare(a, b) < 0; }

// Index of x in a sorted breakpoint list.
std::size_t grid_index(const std::vector<Scalar>& grid, const Scalar& x) {
  auto it = std::lower_bound(grid.begin(), grid.end(), x, scalar_less);
  return static_cast<std::size_t>(it - grid.begin());
}

struct MapVecLess {
  bool operator()(const MapVec& a, const MapVec& b) const { return mapvec_less(a, b); }
};

}  // namespace

WCOperator WCOperator::indicator(const BoxSet& s) {
  std::vector<WCTerm> terms;
  for (auto& b : s.boxes()) terms.push_back({b, MapVec(s.dim(), Map1D::identity()), Weight::constant(s.dim(), 1)});
  return WCOperator(s.dim(), std::move(terms));
}

std::string WCOperator::to_string() const {
  std::string out;
  for (auto& t : terms_)
    out += (out.empty() ? "" : "; ") + t.support.to_string() + ": " + t.weight.to_string() + " * phi" +
           mapvec_to_string(t.map);
  return out.empty() ? "0" : out;
}

WCOperator op_mul(const WCOperator& a, const WCOperator& b) {
  std::vector<WCTerm> out;
  for (auto& ta : a.terms()) {
    Box img = map_box(ta.map, ta.support);
    for (auto& tb : b.terms()) {
      auto hit = img.intersect(tb.support);
      if (!hit) continue;
      auto sup = preimage_box(ta.map, *hit).intersect(ta.support);
      if (!sup) continue;
      out.push_back({*sup, compose_maps(tb.map, ta.map), ta.weight * tb.weight.after(ta.map)});
    }
  }
  return WCOperator(a.dim(), std::move(out));
}

// <ψ, χ_S w φ∘m> = <χ_{m(S)} (w∘m^{-1}) Φ_{m^{-1}} ψ∘m^{-1}, φ>
WCOperator op_adjoint(const WCOperator& a) {
  std::vector<WCTerm> out;
  for (auto& t : a.terms()) {
    MapVec inv = invert_maps(t.map);
    out.push_back({map_box(t.map, t.support), inv, t.weight.after(inv) * jacobian(inv)});
  }
  return WCOperator(a.dim(), std::move(out));
}

WCOperator op_add(const WCOperator& a, const WCOperator& b) {
  auto terms = a.terms();
  terms.insert(terms.end(), b.terms().begin(), b.terms().end());
  return WCOperator(a.dim(), std::move(terms));
}

WCOperator op_scale(const WCOperator& a, const Scalar& c) {
  std::vector<WCTerm> out;
  for (auto& t : a.terms()) out.push_back({t.support, t.map, t.weight * Weight::constant(a.dim(), c)});
  return WCOperator(a.dim(), std::move(out));
}

WCOperator op_sub(const WCOperator& a, const WCOperator& b) { return op_add(a, op_scale(b, Scalar(-1))); }

WCOperator normalize(const WCOperator& a) {
  const std::size_t dim = a.dim();
  std::vector<std::vector<Scalar>> grid(dim);
  for (auto& t : a.terms())
    for (std::size_t i = 0; i < dim; ++i) {
      grid[i].push_back(t.support[i].lo);
      grid[i].push_back(t.support[i].hi);
    }
  for (auto& g : grid) {
    std::sort(g.begin(), g.end(), scalar_less);
    g.erase(std::unique(g.begin(), g.end()), g.end());
  }

  std::map<std::vector<std::size_t>, std::map<MapVec, Weight, MapVecLess>> cells;
  for (auto& t : a.terms()) {
    if (t.support.degenerate() || t.weight.is_zero()) continue;
    std::vector<std::size_t> lo(dim), hi(dim);
    for (std::size_t i = 0; i < dim; ++i) {
      lo[i] = grid_index(grid[i], t.support[i].lo);
      hi[i] = grid_index(grid[i], t.support[i].hi);
    }
    std::vector<std::size_t> idx = lo;
    while (true) {
      auto& w = cells[idx][t.map];
      w = w + t.weight;
      std::size_t i = 0;
      for (; i < dim; ++i) {
        if (++idx[i] < hi[i]) break;
        idx[i] = lo[i];
      }
      if (i == dim) break;
    }
  }

  std::vector<WCTerm> out;
  for (auto& [idx, group] : cells) {
    std::vector<Interval> sides;
    for (std::size_t i = 0; i < dim; ++i) sides.push_back({grid[i][idx[i]], grid[i][idx[i] + 1]});
    for (auto& [m, w] : group)
      if (!w.is_zero()) out.push_back({Box(sides), m, w});
  }
  return WCOperator(dim, std::move(out));
}

BoxSet op_support(const WCOperator& a) {
  std::vector<Box> boxes;
  WCOperator n = normalize(a);
  for (auto& t : n.terms()) boxes.push_back(t.support);
  return BoxSet::of(a.dim(), boxes);
}

bool op_is_zero(const WCOperator& a) { return normalize(a).terms().empty(); }

bool op_equal(const WCOperator& a, const WCOperator& b) { return op_is_zero(op_sub(a, b)); }

std::string CylOperator::to_string(const KGraph& g) const {
  std::string out;
  for (auto& t : terms_) {
    std::string c = t.coeff == 1 ? "" : t.coeff == -1 ? "-" : hrg::to_string(t.coeff) + "*";
    out += (out.empty() ? "" : " + ") + c + "s(" + g.path_name(t.alpha) + ")s(" + g.path_name(t.beta) + ")^*";
  }
  return out.empty() ? "0" : out;
}

CylOperator op_mul(const KGraph& g, const CylOperator& a, const CylOperator& b) {
  std::vector<CylTerm> out;
  for (auto& ta : a.terms())
    for (auto& tb : b.terms()) {
      if (ta.beta.range != tb.alpha.range) continue;
      for (auto& [eta, zeta] : lambda_min(g, ta.beta, tb.alpha))
        out.push_back({compose(g, ta.alpha, eta), compose(g, tb.beta, zeta), ta.coeff * tb.coeff});
    }
  return CylOperator(std::move(out));
}

CylOperator op_adjoint(const CylOperator& a) {
  std::vector<CylTerm> out;
  for (auto& t : a.terms()) out.push_back({t.beta, t.alpha, t.coeff});
  return CylOperator(std::move(out));
}

CylOperator op_add(const CylOperator& a, const CylOperator& b) {
  auto terms = a.terms();
  terms.insert(terms.end(), b.terms().begin(), b.terms().end());
  return CylOperator(std::move(terms));
}

CylOperator op_sub(const CylOperator& a, const CylOperator& b) {
  auto terms = a.terms();
  for (auto& t : b.terms()) terms.push_back({t.alpha, t.beta, -t.coeff});
  return CylOperator(std::move(terms));
}

std::vector<AtomAction> atom_actions(const KGraph& g, const CylOperator& a, unsigned depth_cap) {
  Degree D(static_cast<std::size_t>(g.rank()));
  for (auto& t : a.terms()) D = D.join(t.alpha.degree);
  for (std::size_t i = 0; i < D.rank(); ++i)
    if (D[i] > depth_cap) throw DepthError("atom degree exceeds the depth cap " + std::to_string(depth_cap));

  std::map<VertexId, std::vector<Path>> atoms;
  auto atoms_at = [&](VertexId v) -> const std::vector<Path>& {
    auto it = atoms.find(v);
    if (it != atoms.end()) return it->second;
    std::vector<Path> list;
    for (auto& p : enumerate_paths_upto(g, v, D))
      if (atom_nonempty(g, p, D)) list.push_back(p);
    return atoms.emplace(v, std::move(list)).first->second;
  };

  std::map<std::pair<Path, Path>, Rational> acc;
  for (auto& t : a.terms()) {
    if (t.coeff == 0) continue;
    for (auto& lambda : atoms_at(t.alpha.range)) {
      if (!is_prefix(g, t.alpha, lambda)) continue;
      Path rest = factorize(g, lambda, t.alpha.degree).second;
      acc[{lambda, compose(g, t.beta, rest)}] += t.coeff;
    }
  }
  std::vector<AtomAction> out;
  for (auto& [key, c] : acc)
    if (c != 0) out.push_back({key.first, key.second, c});
  return out;
}

std::vector<Path> op_support(const KGraph& g, const CylOperator& a, unsigned depth_cap) {
  std::vector<Path> out;
  for (auto& act : atom_actions(g, a, depth_cap))
    if (out.empty() || out.back() != act.atom) out.push_back(act.atom);
  return out;
}

bool op_equal(const KGraph& g, const CylOperator& a, const CylOperator& b, unsigned depth_cap) {
  return atom_actions(g, op_sub(a, b), depth_cap).empty();
}

WCOperator IntervalFamily::path(const Path& p) const {
  if (p.is_vertex()) return vertices_[p.range];
  WCOperator out = edges_[p.word[0]];
  for (std::size_t i = 1; i < p.word.size(); ++i) out = op_mul(out, edges_[p.word[i]]);
  return out;
}

std::optional<std::string> IntervalFamily::nonzero(const WCOperator& a) const {
  BoxSet s = op_support(a);
  if (s.boxes().empty()) return std::nullopt;
  return s.to_string();
}

CylOperator CanonicalFamily::path(const Path& p) const {
  return CylOperator({{p, bs_.graph.vertex_path(p.source), Rational(1)}});
}

std::optional<std::string> CanonicalFamily::nonzero(const CylOperator& a) const {
  auto atoms = op_support(graph(), a, bs_.depth_cap);
  if (atoms.empty()) return std::nullopt;
  std::string s;
  for (auto& p : atoms) s += (s.empty() ? "" : ", ") + graph().path_name(p);
  return "{" + s + "}";
}

IntervalFamily build_generators_unchecked(const IntervalBranchingSystem& bs) {
  bs.check_shape();
  IntervalFamily f;
  f.bs_ = bs;
  for (auto& d : bs.domains) f.vertices_.push_back(WCOperator::indicator(d));
  for (auto& m : bs.maps) {
    std::vector<WCTerm> terms;
    for (auto& p : m.pieces()) {
      MapVec inv = invert_maps(p.maps);
      terms.push_back({map_box(p.maps, p.domain), inv, jacobian(inv).sqrt()});
    }
    f.edges_.push_back(WCOperator(bs.dim, std::move(terms)));
  }
  return f;
}

IntervalFamily build_generators(const IntervalBranchingSystem& bs) {
  auto r = check_axioms(bs, AxiomMode::FinitelyAligned);
  if (auto c = r.first_failure())
    throw UncheckedSystem("branching system fails condition (" + std::to_string(c->number) + "): " + c->detail);
  return build_generators_unchecked(bs);
}

CanonicalFamily build_generators(const CanonicalBS& bs) {
  CanonicalFamily f;
  f.bs_ = bs;
  const KGraph& g = bs.graph;
  for (VertexId v = 0; v < g.num_vertices(); ++v) f.vertices_.push_back(f.path(g.vertex_path(v)));
  for (EdgeId e = 0; e < g.num_edges(); ++e) f.edges_.push_back(f.path(g.edge_path(e)));
  return f;
}

}  // namespace hrg
