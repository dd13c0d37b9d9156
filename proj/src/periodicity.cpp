#include "hrg/periodicity.hpp"

#include <algorithm>
#include <map>

namespace hrg {

namespace {

Degree degree2(unsigned p, unsigned q) { return Degree(std::vector<unsigned>{p, q}); }

void require_single_vertex_2graph(const KGraph& g) {
  if (g.rank() != 2 || g.num_vertices() != 1) throw NotApplicable("periodicity needs a single-vertex 2-graph");
  std::size_t m = g.edges_into(0, 1).size(), n = g.edges_into(0, 2).size();
  if (m < 2 || n < 2)
    throw NotApplicable("periodicity needs at least two edges of each color, got " + std::to_string(m) + " and " +
                        std::to_string(n));
}

// One endpoint of an iterated interval. Small values are exact scalars;
// values like (1/4)^(4^20) are kept as prime-power logarithms.
class Coord {
 public:
  Coord(const Scalar& s) : scalar_(s) {}  // NOLINT(google-explicit-constructor)
  explicit Coord(const LogValue& l) : log_(l) {
    if (l.fits_scalar()) scalar_ = l.to_scalar();
  }

  bool is_scalar() const { return scalar_.has_value(); }
  const Scalar& scalar() const {
    if (!scalar_) throw ArithmeticError("value too large for an exact scalar: " + log_.to_string());
    return *scalar_;
  }
  LogValue log() const {
    if (!scalar_) return log_;
    if (scalar_->sign() < 0) throw ArithmeticError("log form of a negative value");
    return LogValue::from_scalar(*scalar_);
  }
  std::string to_string() const { return scalar_ ? scalar_->to_string() : log_.to_string(); }

 private:
  std::optional<Scalar> scalar_;
  LogValue log_;
};

int compare(const Coord& a, const Coord& b) {
  if (a.is_scalar() && b.is_scalar()) return hrg::compare(a.scalar(), b.scalar());
  if (a.is_scalar() && a.scalar().sign() < 0) return -1;
  if (b.is_scalar() && b.scalar().sign() < 0) return 1;
  return hrg::compare(a.log(), b.log());
}

Coord apply(const Map1D& f, const Coord& x) {
  if (f.kind() == Map1D::Kind::Affine) return f.apply(x.scalar());
  return Coord(LogValue::from_scalar(f.coeff()) * x.log().pow(f.power()));
}

struct CInterval {
  Coord lo, hi;
};
using CBox = std::vector<CInterval>;

CBox to_cbox(const Box& b) {
  CBox out;
  for (auto& s : b.sides()) out.push_back({s.lo, s.hi});
  return out;
}

bool inside(const CBox& x, const Box& piece) {
  for (std::size_t i = 0; i < x.size(); ++i)
    if (compare(Coord(piece[i].lo), x[i].lo) > 0 || compare(x[i].hi, Coord(piece[i].hi)) > 0) return false;
  return true;
}

// One step of a piecewise map on a box that lies in a single piece.
std::optional<CBox> step(const PiecewiseMap& T, const CBox& x) {
  for (auto& p : T.pieces()) {
    if (!inside(x, p.domain)) continue;
    CBox out;
    for (std::size_t i = 0; i < x.size(); ++i) {
      Coord a = apply(p.maps[i], x[i].lo), b = apply(p.maps[i], x[i].hi);
      if (p.maps[i].increasing())
        out.push_back({a, b});
      else
        out.push_back({b, a});
    }
    return out;
  }
  return std::nullopt;
}

std::optional<CBox> iterate(const PiecewiseMap& T, const Box& E, long n) {
  PiecewiseMap M = n >= 0 ? T : T.inverse();
  std::optional<CBox> x = to_cbox(E);
  for (long k = 0; k < (n >= 0 ? n : -n) && x; ++k) x = step(M, *x);
  return x;
}

bool null_intersection(const CBox& x, const Box& E) {
  for (std::size_t i = 0; i < x.size(); ++i)
    if (compare(x[i].hi, Coord(E[i].lo)) <= 0 || compare(Coord(E[i].hi), x[i].lo) <= 0 ||
        compare(x[i].lo, x[i].hi) >= 0)
      return true;
  return false;
}

Box with_side(Box b, std::size_t i, const Scalar& lo, const Scalar& hi) {
  b[i] = Interval{lo, hi};
  return b;
}

// The half-box escape test in coordinate i.
std::optional<std::string> escape_test(const Piece& piece, const Box& E, std::size_t i, Box& H, bool& below) {
  const Map1D& m = piece.maps[i];
  if (!m.increasing()) return "T is decreasing in coordinate " + std::to_string(i + 1);
  Box TE = map_box(piece.maps, E);
  if (!piece.domain.contains(TE)) return "T(E) = " + TE.to_string() + " leaves the piece " + piece.domain.to_string();
  const Interval& P = piece.domain[i];
  for (bool b : {true, false}) {
    Scalar lo = b ? P.lo : E[i].hi, hi = b ? E[i].lo : P.hi;
    if (compare(lo, hi) >= 0) continue;
    Box cand = with_side(piece.domain, i, lo, hi);
    if (cand.contains(TE) && cand.contains(map_box(piece.maps, cand))) {
      H = cand;
      below = b;
      return std::nullopt;
    }
  }
  return "no invariant half-box contains T(E) = " + TE.to_string();
}

std::vector<Box> quarter_boxes(const Box& b, std::size_t i) {
  std::vector<Box> out;
  Scalar len = b[i].hi - b[i].lo;
  for (int k = 0; k < 4; ++k)
    out.push_back(with_side(b, i, b[i].lo + len * Scalar(Rational(k, 4)), b[i].lo + len * Scalar(Rational(k + 1, 4))));
  return out;
}

}  // namespace

std::vector<std::pair<Path, Path>> periodicity_pair_scan(const KGraph& g, unsigned p, unsigned q, Execution exec) {
  auto mus = enumerate_paths(g, 0, degree2(p, 0));
  auto nus = enumerate_paths(g, 0, degree2(0, q));
  const long rows = static_cast<long>(mus.size()), cols = static_cast<long>(nus.size());
  std::vector<std::pair<Path, Path>> out(static_cast<std::size_t>(rows * cols));
  Degree d = degree2(0, q);
  auto cell = [&](long k) { out[k] = factorize(g, compose(g, mus[k / cols], nus[k % cols]), d); };
  if (exec == Execution::Serial) {
    for (long k = 0; k < rows * cols; ++k) cell(k);
  } else {
#pragma omp parallel for schedule(static)
    for (long k = 0; k < rows * cols; ++k) cell(k);
  }
  return out;
}

PeriodicityResult detect_periodicity(const KGraph& g, unsigned bound, Execution exec) {
  require_single_vertex_2graph(g);
  PeriodicityResult r;
  r.bound = bound;
  Integer m(static_cast<unsigned long>(g.edges_into(0, 1).size()));
  Integer n(static_cast<unsigned long>(g.edges_into(0, 2).size()));
  Integer mp = 1;
  for (unsigned p = 1; p <= bound; ++p) {
    mp *= m;
    Integer nq = n;
    unsigned q = 1;
    while (nq < mp) {
      nq *= n;
      ++q;
    }
    if (nq != mp) continue;
    r.tried.emplace_back(p, q);

    auto mus = enumerate_paths(g, 0, degree2(p, 0));
    auto nus = enumerate_paths(g, 0, degree2(0, q));
    auto scan = periodicity_pair_scan(g, p, q, exec);
    const std::size_t cols = nus.size();
    bool ok = true;
    std::vector<Path> h(mus.size()), inv(nus.size());
    for (std::size_t i = 0; i < mus.size() && ok; ++i) {
      h[i] = scan[i * cols].first;
      for (std::size_t j = 1; j < cols && ok; ++j) ok = scan[i * cols + j].first == h[i];
    }
    for (std::size_t j = 0; j < cols && ok; ++j) {
      inv[j] = scan[j].second;
      for (std::size_t i = 1; i < mus.size() && ok; ++i) ok = scan[i * cols + j].second == inv[j];
    }
    for (std::size_t i = 0; i < mus.size() && ok; ++i) {
      auto it = std::find(nus.begin(), nus.end(), h[i]);
      ok = it != nus.end() && inv[static_cast<std::size_t>(it - nus.begin())] == mus[i];
    }
    if (!ok) continue;
    r.periodic = true;
    r.a = p;
    r.b = q;
    for (std::size_t i = 0; i < mus.size(); ++i) r.h.emplace_back(mus[i], h[i]);
    std::sort(r.h.begin(), r.h.end());
    return r;
  }
  return r;
}

PiecewiseMap path_map(const IntervalBranchingSystem& bs, const Path& p) {
  if (p.is_vertex()) return PiecewiseMap::identity_on(bs.domain(p.range));
  PiecewiseMap f = bs.maps[p.word[0]];
  for (std::size_t i = 1; i < p.word.size(); ++i) f = map_compose(f, bs.maps[p.word[i]]);
  return f;
}

PiecewiseMap periodicity_map(const IntervalBranchingSystem& bs, const Path& mu, const Path& hmu) {
  return map_compose(path_map(bs, hmu), path_map(bs, mu).inverse());
}

bool iterate_disjoint(const PiecewiseMap& T, const Box& E, long n) {
  auto x = iterate(T, E, n);
  return x && null_intersection(*x, E);
}

std::pair<std::string, std::string> iterate_hull(const PiecewiseMap& T, const Box& E, long n, std::size_t coord) {
  auto x = iterate(T, E, n);
  if (!x) return {"?", "?"};
  return {(*x)[coord].lo.to_string(), (*x)[coord].hi.to_string()};
}

FaithfulnessReport check_faithfulness(const IntervalBranchingSystem& bs, const PeriodicityResult& pr,
                                      const FaithfulnessRequest& request) {
  const KGraph& g = bs.graph;
  if (!pr.periodic) throw FaithfulnessError("the graph is not periodic up to the searched bound");
  if (g.num_vertices() != 1) throw FaithfulnessError("faithfulness needs a single-vertex graph");
  const BoxSet& D = bs.domain(0);
  if (D.measure().sign() <= 0) throw FaithfulnessError("eta(D_v) = 0");
  if (request.mode == FaithfulnessMode::Bounded)
    for (long n : request.F)
      if (n == 0) throw FaithfulnessError("F must not contain 0");

  FaithfulnessReport rep;
  BoxSet covered(bs.dim);
  for (auto& [mu, hmu] : pr.h) {
    BoxSet a = path_map(bs, mu).image(), b = path_map(bs, hmu).image();
    std::string name = "f_" + g.path_name(mu) + "(D_v) = f_" + g.path_name(hmu) + "(D_v)";
    if (!a.equal_ae(b)) throw FaithfulnessError(name + " fails: " + a.to_string() + " vs " + b.to_string());
    rep.identities.push_back(name);
    if (auto cut = covered.intersect(a); !cut.is_null())
      throw FaithfulnessError("the sets f_mu(D_v) overlap on " + cut.to_string());
    covered = covered.unite(a);
  }
  if (!covered.equal_ae(D)) throw FaithfulnessError("the sets f_mu(D_v) do not cover D_v");
  rep.identities.push_back("the sets f_mu(D_v) partition D_v");

  for (auto& [mu, hmu] : pr.h) {
    PiecewiseMap T = periodicity_map(bs, mu, hmu);
    std::vector<std::pair<Box, std::vector<std::size_t>>> cands;
    for (auto& E : request.candidates) {
      std::vector<std::size_t> coords;
      for (std::size_t i = 0; i < bs.dim; ++i) coords.push_back(i);
      cands.emplace_back(E, coords);
    }
    bool moving = false;
    for (auto& piece : T.pieces())
      for (std::size_t i = 0; i < bs.dim; ++i) {
        if (piece.maps[i].is_identity()) continue;
        moving = true;
        for (auto& E : quarter_boxes(piece.domain, i)) cands.push_back({E, {i}});
      }
    if (!moving) rep.attempts.push_back({mu, Box(), "T is the identity on every piece"});

    for (auto& [E, coords] : cands) {
      auto attempt = [&](const std::string& why) { rep.attempts.push_back({mu, E, why}); };
      if (!BoxSet::single(E).subset_ae(T.domain())) {
        attempt("E is not inside f_" + g.path_name(mu) + "(D_v)");
        continue;
      }
      if (E.degenerate()) {
        attempt("E has measure zero");
        continue;
      }
      FaithfulnessCertificate cert;
      cert.mode = request.mode;
      cert.mu = mu;
      cert.hmu = hmu;
      cert.T = T;
      cert.E = E;
      if (request.mode == FaithfulnessMode::Bounded) {
        std::optional<long> bad;
        for (long n : request.F)
          if (!iterate_disjoint(T, E, n)) {
            bad = n;
            break;
          }
        if (bad) {
          attempt("T^" + std::to_string(*bad) + "(E) meets E");
          continue;
        }
        cert.F = request.F;
        rep.attempts.push_back({mu, E, "certified"});
        rep.certificate = cert;
        return rep;
      }
      const Piece* home = nullptr;
      for (auto& p : T.pieces())
        if (p.domain.contains(E)) home = &p;
      if (!home) {
        attempt("E is not inside a single piece of T");
        continue;
      }
      std::string why;
      for (std::size_t i : coords) {
        if (home->maps[i].is_identity()) continue;
        auto fail = escape_test(*home, E, i, cert.H, cert.H_below);
        if (!fail) {
          cert.coordinate = i;
          cert.piece = home->domain;
          rep.attempts.push_back({mu, E, "certified"});
          rep.certificate = cert;
          return rep;
        }
        why += (why.empty() ? "" : "; ") + *fail;
      }
      attempt(why.empty() ? "T is the identity on E" : why);
    }
  }
  return rep;
}

namespace {

template <class Family>
WUnitaryReport unitary_report(const Family& f, const PeriodicityResult& pr) {
  if (!pr.periodic) throw NotApplicable("W needs a periodic graph");
  auto u = check_unitary(f, build_W(f, pr.h), 0);
  return {u.unitary, u.witness, u.detail};
}

}  // namespace

WUnitaryReport verify_w_unitary(const IntervalBranchingSystem& bs, const PeriodicityResult& pr) {
  return unitary_report(build_generators(bs), pr);
}

WUnitaryReport verify_w_unitary(const CanonicalBS& bs, const PeriodicityResult& pr) {
  return unitary_report(build_generators(bs), pr);
}

}  // namespace hrg
