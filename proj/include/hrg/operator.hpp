#pragma once

#include "hrg/axioms.hpp"
#include "hrg/branching.hpp"
#include "hrg/canonical.hpp"
#include "hrg/execution.hpp"

#include <optional>
#include <string>
#include <vector>

namespace hrg {

class UncheckedSystem : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// (Aφ)(x) = Σ χ_support(x) · weight(x) · φ(map(x)). The map sends the support
// back into the space; S_μ uses f_μ^{-1} on R_μ.
struct WCTerm {
  Box support;
  MapVec map;
  Weight weight;
};

class WCOperator {
 public:
  WCOperator() = default;
  explicit WCOperator(std::size_t dim, std::vector<WCTerm> terms = {}) : dim_(dim), terms_(std::move(terms)) {}
  // Multiplication by the indicator of s.
  static WCOperator indicator(const BoxSet& s);

  std::size_t dim() const { return dim_; }
  const std::vector<WCTerm>& terms() const { return terms_; }
  std::string to_string() const;

 private:
  std::size_t dim_ = 1;
  std::vector<WCTerm> terms_;
};

WCOperator op_mul(const WCOperator& a, const WCOperator& b);
WCOperator op_adjoint(const WCOperator& a);
WCOperator op_add(const WCOperator& a, const WCOperator& b);
WCOperator op_sub(const WCOperator& a, const WCOperator& b);
WCOperator op_scale(const WCOperator& a, const Scalar& c);

// Refines all supports to the common breakpoint grid, sums weights of terms
// with the same cell and map, and drops zeros. Cells are in grid order.
WCOperator normalize(const WCOperator& a);
// Where a is nonzero, as a union of grid cells.
BoxSet op_support(const WCOperator& a);
bool op_is_zero(const WCOperator& a);
bool op_equal(const WCOperator& a, const WCOperator& b);

// c · s_α s_β^* on the boundary-path space.
struct CylTerm {
  Path alpha, beta;
  Rational coeff;
};

class CylOperator {
 public:
  CylOperator() = default;
  explicit CylOperator(std::vector<CylTerm> terms) : terms_(std::move(terms)) {}
  const std::vector<CylTerm>& terms() const { return terms_; }
  std::string to_string(const KGraph& g) const;

 private:
  std::vector<CylTerm> terms_;
};

// Products follow Z(μ) ∩ Z(ν) = ∪_{(α,β)∈Λ^min(μ,ν)} Z(μα).
CylOperator op_mul(const KGraph& g, const CylOperator& a, const CylOperator& b);
CylOperator op_adjoint(const CylOperator& a);
CylOperator op_add(const CylOperator& a, const CylOperator& b);
CylOperator op_sub(const CylOperator& a, const CylOperator& b);

// Action on atoms at the join of all α degrees: atom λ = α λ' goes to β λ'.
struct AtomAction {
  Path atom, target;
  Rational coeff;
  friend bool operator==(const AtomAction& x, const AtomAction& y) {
    return x.atom == y.atom && x.target == y.target && x.coeff == y.coeff;
  }
};
std::vector<AtomAction> atom_actions(const KGraph& g, const CylOperator& a, unsigned depth_cap = 16);
// Atoms where a acts nonzero.
std::vector<Path> op_support(const KGraph& g, const CylOperator& a, unsigned depth_cap = 16);
bool op_equal(const KGraph& g, const CylOperator& a, const CylOperator& b, unsigned depth_cap = 16);

// A family {S_v, S_μ} with the arithmetic needed to check relations.
// nonzero() returns a description of where an operator is nonzero.
class IntervalFamily {
 public:
  using Op = WCOperator;
  const KGraph& graph() const { return bs_.graph; }
  const Op& vertex(VertexId v) const { return vertices_[v]; }
  const Op& edge(EdgeId e) const { return edges_[e]; }
  Op path(const Path& p) const;
  Op mul(const Op& a, const Op& b) const { return op_mul(a, b); }
  Op adjoint(const Op& a) const { return op_adjoint(a); }
  Op add(const Op& a, const Op& b) const { return op_add(a, b); }
  Op sub(const Op& a, const Op& b) const { return op_sub(a, b); }
  Op zero() const { return WCOperator(bs_.dim); }
  std::optional<std::string> nonzero(const Op& a) const;

  const IntervalBranchingSystem& system() const { return bs_; }
  std::vector<Op>& edges() { return edges_; }

 private:
  friend IntervalFamily build_generators_unchecked(const IntervalBranchingSystem& bs);
  IntervalBranchingSystem bs_;
  std::vector<Op> vertices_, edges_;
};

class CanonicalFamily {
 public:
  using Op = CylOperator;
  const KGraph& graph() const { return bs_.graph; }
  const Op& vertex(VertexId v) const { return vertices_[v]; }
  const Op& edge(EdgeId e) const { return edges_[e]; }
  Op path(const Path& p) const;
  Op mul(const Op& a, const Op& b) const { return op_mul(graph(), a, b); }
  Op adjoint(const Op& a) const { return op_adjoint(a); }
  Op add(const Op& a, const Op& b) const { return op_add(a, b); }
  Op sub(const Op& a, const Op& b) const { return op_sub(a, b); }
  Op zero() const { return {}; }
  std::optional<std::string> nonzero(const Op& a) const;

 private:
  friend CanonicalFamily build_generators(const CanonicalBS& bs);
  CanonicalBS bs_;
  std::vector<Op> vertices_, edges_;
};

// S_v = χ_{D_v}; S_μ(φ) = Φ_{f_μ^{-1}}^{1/2} · (φ ∘ f_μ^{-1}) on R_μ.
// The checked form throws UncheckedSystem unless conditions (1)-(7) hold.
IntervalFamily build_generators(const IntervalBranchingSystem& bs);
IntervalFamily build_generators_unchecked(const IntervalBranchingSystem& bs);
// S_v = s_v s_v^*, S_μ = s_μ s_{s(μ)}^*, all weights 1.
CanonicalFamily build_generators(const CanonicalBS& bs);

struct CKReport {
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

namespace ck_detail {

// S_μ^* S_ν - Σ_{Λ^min(μ,ν)} S_α S_β^*, seen through S_μ so that the witness
// lies in R_μ. Empty when the relation holds.
template <class Family>
std::optional<std::string> pair_defect(const Family& f, EdgeId mu, EdgeId nu) {
  const KGraph& g = f.graph();
  auto lhs = f.mul(f.adjoint(f.edge(mu)), f.edge(nu));
  auto rhs = f.zero();
  if (g.edge(mu).range == g.edge(nu).range)
    for (auto& [alpha, beta] : lambda_min(g, g.edge_path(mu), g.edge_path(nu)))
      rhs = f.add(rhs, f.mul(f.path(alpha), f.adjoint(f.path(beta))));
  return f.nonzero(f.mul(f.edge(mu), f.sub(lhs, rhs)));
}

}  // namespace ck_detail

// One slot per ordered edge pair, in row-major order.
template <class Family>
std::vector<std::optional<std::string>> ck_pair_defects(const Family& f, Execution exec) {
  const std::size_t n = f.graph().num_edges();
  std::vector<std::optional<std::string>> out(n * n);
  if (exec == Execution::Serial) {
    for (std::size_t i = 0; i < n * n; ++i) out[i] = ck_detail::pair_defect(f, i / n, i % n);
    return out;
  }
  const long total = static_cast<long>(n * n);
#pragma omp parallel for schedule(dynamic, 1)
  for (long i = 0; i < total; ++i) out[i] = ck_detail::pair_defect(f, i / n, i % n);
  return out;
}

// The four relations of the reduction theorem, for edge generators:
//   (1) the S_v are mutually orthogonal projections;
//   (2) S_r(e) S_e = S_e = S_e S_s(e), and S_e S_f = S_f' S_e' per square;
//   (3) S_μ^* S_ν = Σ_{(α,β)∈Λ^min(μ,ν)} S_α S_β^* for all edges μ, ν;
//   (4) Π_{μ∈E} (S_v - S_μ S_μ^*) = 0 for each exhaustive set E.
template <class Family>
CKReport verify_ck(const Family& f, const std::vector<ExhaustiveSet>& declared, Execution exec = Execution::Parallel) {
  using axioms_detail::fail;
  const KGraph& g = f.graph();
  CKReport r;

  ConditionResult c1{1, "mutually orthogonal projections S_v"};
  for (VertexId v = 0; v < g.num_vertices(); ++v) {
    ++c1.checked;
    const auto& p = f.vertex(v);
    if (auto d = f.nonzero(f.sub(f.adjoint(p), p)))
      fail(c1, *d, "S_" + g.vertex_name(v) + " is not self-adjoint");
    else if (auto d2 = f.nonzero(f.sub(f.mul(p, p), p)))
      fail(c1, *d2, "S_" + g.vertex_name(v) + " is not idempotent");
    for (VertexId w = v + 1; w < g.num_vertices(); ++w) {
      ++c1.checked;
      if (auto d = f.nonzero(f.mul(p, f.vertex(w))))
        fail(c1, *d, "S_" + g.vertex_name(v) + " S_" + g.vertex_name(w) + " != 0");
    }
  }
  r.conditions.push_back(c1);

  ConditionResult c2{2, "S_μ S_ν = S_α S_β"};
  for (EdgeId e = 0; e < g.num_edges(); ++e) {
    ++c2.checked;
    const Edge& ed = g.edge(e);
    if (auto d = f.nonzero(f.sub(f.mul(f.vertex(ed.range), f.edge(e)), f.edge(e))))
      fail(c2, *d, g.vertex_name(ed.range) + " " + ed.name + " = " + ed.name);
    else if (auto d2 = f.nonzero(f.sub(f.mul(f.edge(e), f.vertex(ed.source)), f.edge(e))))
      fail(c2, *d2, ed.name + " " + g.vertex_name(ed.source) + " = " + ed.name);
  }
  for (auto& sq : g.squares()) {
    ++c2.checked;
    auto lhs = f.mul(f.edge(sq.e), f.edge(sq.f));
    auto rhs = f.mul(f.edge(sq.f2), f.edge(sq.e2));
    if (auto d = f.nonzero(f.sub(lhs, rhs)))
      fail(c2, *d,
           g.edge(sq.e).name + " " + g.edge(sq.f).name + " = " + g.edge(sq.f2).name + " " + g.edge(sq.e2).name);
  }
  r.conditions.push_back(c2);

  ConditionResult c3{3, "S_μ^* S_ν = Σ_{(α,β)∈Λ^min(μ,ν)} S_α S_β^*"};
  auto defects = ck_pair_defects(f, exec);
  const std::size_t n = g.num_edges();
  for (std::size_t i = 0; i < defects.size(); ++i) {
    ++c3.checked;
    if (defects[i]) fail(c3, *defects[i], "S_" + g.edge(i / n).name + "^* S_" + g.edge(i % n).name);
  }
  r.conditions.push_back(c3);

  ConditionResult c4{4, "Π_{μ∈E} (S_v - S_μ S_μ^*) = 0"};
  for (auto& s : exhaustive_sets_to_check(g, declared, &r.warnings, exec)) {
    ++c4.checked;
    auto prod = f.vertex(s.vertex);
    for (EdgeId e : s.edges)
      prod = f.mul(prod, f.sub(f.vertex(s.vertex), f.mul(f.edge(e), f.adjoint(f.edge(e)))));
    if (auto d = f.nonzero(prod)) fail(c4, *d, describe(g, s));
  }
  r.conditions.push_back(c4);
  return r;
}

// W = Σ_μ S_{h(μ)} S_μ^* over pairs (μ, h(μ)).
template <class Family>
typename Family::Op build_W(const Family& f, const std::vector<std::pair<Path, Path>>& h) {
  auto w = f.zero();
  for (auto& [mu, hmu] : h) w = f.add(w, f.mul(f.path(hmu), f.adjoint(f.path(mu))));
  return w;
}

struct UnitaryReport {
  bool unitary = true;
  std::string witness;  // where W^*W or WW^* differs from S_v
  std::string detail;
};

template <class Family>
UnitaryReport check_unitary(const Family& f, const typename Family::Op& w, VertexId v) {
  if (auto d = f.nonzero(f.sub(f.mul(f.adjoint(w), w), f.vertex(v)))) return {false, *d, "W^*W != S_v"};
  if (auto d = f.nonzero(f.sub(f.mul(w, f.adjoint(w)), f.vertex(v)))) return {false, *d, "WW^* != S_v"};
  return {};
}

}  // namespace hrg
