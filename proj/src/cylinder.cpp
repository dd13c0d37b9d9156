#include "hrg/cylinder.hpp"

#include <algorithm>

namespace hrg {

CylinderSet CylinderSet::of(const KGraph& g, std::vector<Path> terms) {
  std::sort(terms.begin(), terms.end());
  terms.erase(std::unique(terms.begin(), terms.end()), terms.end());
  CylinderSet c;
  for (std::size_t i = 0; i < terms.size(); ++i) {
    bool covered = false;
    for (std::size_t j = 0; j < terms.size() && !covered; ++j)
      if (i != j && terms[j].degree.le(terms[i].degree) && terms[j] != terms[i] &&
          is_prefix(g, terms[j], terms[i]))
        covered = true;
    if (!covered) c.terms_.push_back(terms[i]);
  }
  return c;
}

std::string CylinderSet::to_string(const KGraph& g) const {
  if (terms_.empty()) return "{}";
  std::string s = "{";
  for (std::size_t i = 0; i < terms_.size(); ++i) s += (i ? ", " : "") + ("Z(" + g.path_name(terms_[i]) + ")");
  return s + "}";
}

CylinderSet cyl_union(const KGraph& g, const CylinderSet& a, const CylinderSet& b) {
  std::vector<Path> t = a.terms();
  t.insert(t.end(), b.terms().begin(), b.terms().end());
  return CylinderSet::of(g, std::move(t));
}

CylinderSet cyl_intersect(const KGraph& g, const CylinderSet& a, const CylinderSet& b) {
  std::vector<Path> out;
  for (auto& mu : a.terms())
    for (auto& nu : b.terms()) {
      if (mu.range != nu.range) continue;
      for (auto& [alpha, beta] : lambda_min(g, mu, nu)) out.push_back(compose(g, mu, alpha));
    }
  return CylinderSet::of(g, std::move(out));
}

bool cyl_subset(const KGraph& g, const CylinderSet& a, const CylinderSet& b) {
  // Z(mu) ⊆ ∪ Z(nu) iff the transported extensions form an exhaustive set at
  // s(mu).
  for (auto& mu : a.terms()) {
    std::vector<Path> ext;
    for (auto& nu : b.terms()) {
      if (nu.range != mu.range) continue;
      for (auto& [alpha, beta] : lambda_min(g, mu, nu)) ext.push_back(alpha);
    }
    if (!is_exhaustive(g, mu.source, ext).exhaustive) return false;
  }
  return true;
}

bool cyl_equal_ae(const KGraph& g, const CylinderSet& a, const CylinderSet& b) {
  return cyl_subset(g, a, b) && cyl_subset(g, b, a);
}

bool cyl_equal_by_atoms(const KGraph& g, const CylinderSet& a, const CylinderSet& b, unsigned depth_cap) {
  return atom_equal(g, AtomSet::from_cylinders(g, a, depth_cap), AtomSet::from_cylinders(g, b, depth_cap));
}

CylinderSet shift(const KGraph& g, const Path& prefix, const Degree& m) {
  if (!m.le(prefix.degree))
    throw PathError("shift by " + m.to_string() + " exceeds degree of " + g.path_name(prefix));
  return CylinderSet::of(g, {factorize(g, prefix, m).second});
}

CylinderSet prepend(const KGraph& g, const Path& mu, const CylinderSet& a) {
  std::vector<Path> out;
  for (auto& t : a.terms()) out.push_back(compose(g, mu, t));
  return CylinderSet::of(g, std::move(out));
}

bool atom_nonempty(const KGraph& g, const Path& pi, const Degree& D) {
  std::vector<Path> frozen_edges;
  for (std::size_t i = 0; i < D.rank(); ++i)
    if (pi.degree[i] < D[i])
      for (EdgeId e : g.edges_into(pi.source, static_cast<int>(i + 1))) frozen_edges.push_back(g.edge_path(e));
  return !is_exhaustive(g, pi.source, frozen_edges).exhaustive;
}

AtomSet AtomSet::from_cylinders(const KGraph& g, const CylinderSet& c, unsigned depth_cap) {
  Degree D(static_cast<std::size_t>(g.rank()));
  for (auto& t : c.terms()) D = D.join(t.degree);
  if (D.total() > depth_cap)
    throw DepthError("truncation degree " + D.to_string() + " exceeds depth cap " + std::to_string(depth_cap));
  std::set<Path> atoms;
  for (auto& mu : c.terms())
    for (auto& tau : enumerate_paths_upto(g, mu.source, D - mu.degree)) {
      Path pi = compose(g, mu, tau);
      if (atom_nonempty(g, pi, D)) atoms.insert(pi);
    }
  return AtomSet(D, std::move(atoms));
}

AtomSet AtomSet::refined(const KGraph& g, const Degree& D) const {
  if (D_.rank() == 0) return AtomSet(D, {});
  if (!D_.le(D)) throw PathError("cannot refine atoms at " + D_.to_string() + " to " + D.to_string());
  if (D == D_) return *this;
  std::set<Path> out;
  for (auto& pi : atoms_) {
    Degree room(D.rank());
    for (std::size_t i = 0; i < D.rank(); ++i) room[i] = pi.degree[i] < D_[i] ? 0 : D[i] - D_[i];
    for (auto& tau : enumerate_paths_upto(g, pi.source, room)) {
      Path p2 = compose(g, pi, tau);
      if (atom_nonempty(g, p2, D)) out.insert(p2);
    }
  }
  return AtomSet(D, std::move(out));
}

std::string AtomSet::to_string(const KGraph& g) const {
  std::string s = "{";
  bool first = true;
  for (auto& pi : atoms_) {
    s += (first ? "" : ", ") + ("A(" + g.path_name(pi) + ")");
    first = false;
  }
  return s + "}@" + D_.to_string();
}

namespace {

Degree common_degree(const AtomSet& a, const AtomSet& b) {
  if (a.degree().rank() == 0) return b.degree();
  if (b.degree().rank() == 0) return a.degree();
  return a.degree().join(b.degree());
}

template <class Op>
AtomSet combine(const KGraph& g, const AtomSet& a, const AtomSet& b, Op op) {
  Degree D = common_degree(a, b);
  AtomSet ra = a.refined(g, D), rb = b.refined(g, D);
  std::set<Path> out;
  op(ra.atoms(), rb.atoms(), std::inserter(out, out.end()));
  return AtomSet(D, std::move(out));
}

}  // namespace

AtomSet atom_union(const KGraph& g, const AtomSet& a, const AtomSet& b) {
  return combine(g, a, b, [](auto& x, auto& y, auto out) { std::set_union(x.begin(), x.end(), y.begin(), y.end(), out); });
}

AtomSet atom_intersect(const KGraph& g, const AtomSet& a, const AtomSet& b) {
  return combine(g, a, b,
                 [](auto& x, auto& y, auto out) { std::set_intersection(x.begin(), x.end(), y.begin(), y.end(), out); });
}

AtomSet atom_subtract(const KGraph& g, const AtomSet& a, const AtomSet& b) {
  return combine(g, a, b,
                 [](auto& x, auto& y, auto out) { std::set_difference(x.begin(), x.end(), y.begin(), y.end(), out); });
}

bool atom_equal(const KGraph& g, const AtomSet& a, const AtomSet& b) {
  Degree D = common_degree(a, b);
  return a.refined(g, D).atoms() == b.refined(g, D).atoms();
}

AtomSet atom_prepend(const KGraph& g, const Path& mu, const AtomSet& a) {
  std::set<Path> out;
  for (auto& pi : a.atoms())
    if (pi.range == mu.source) out.insert(compose(g, mu, pi));
  Degree D = a.degree().rank() == 0 ? mu.degree : a.degree() + mu.degree;
  return AtomSet(D, std::move(out));
}

}  // namespace hrg
