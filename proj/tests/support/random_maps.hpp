#pragma once

#include <hrg/maps.hpp>

#include <algorithm>
#include <numeric>
#include <random>

namespace randmaps {

using namespace hrg;

inline Rational R(long p, long r = 1) { return Rational(p, r); }

namespace detail {
inline Box interval(const Rational& lo, const Rational& hi) { return Box({{Scalar(lo), Scalar(hi)}}); }
}  // namespace detail

// A random piecewise-affine bijection of [0,1]: the domain and image are cut
// at independent breakpoints and the pieces are permuted, each with a random
// orientation.
inline PiecewiseMap random_affine(std::mt19937_64& rng) {
  int n = std::uniform_int_distribution<int>(1, 4)(rng);
  auto cuts = [&]() {
    std::vector<int> all(11);
    std::iota(all.begin(), all.end(), 1);
    std::shuffle(all.begin(), all.end(), rng);
    std::vector<Rational> c{R(0)};
    std::vector<int> pick(all.begin(), all.begin() + (n - 1));
    std::sort(pick.begin(), pick.end());
    for (int k : pick) c.push_back(R(k, 12));
    c.push_back(R(1));
    return c;
  };
  auto dom = cuts(), img = cuts();
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::shuffle(perm.begin(), perm.end(), rng);
  std::vector<Piece> pieces;
  for (int i = 0; i < n; ++i) {
    Rational lo = dom[i], hi = dom[i + 1], tlo = img[perm[i]], thi = img[perm[i] + 1];
    Rational a = (thi - tlo) / (hi - lo);
    bool flip = rng() % 2;
    Map1D m = flip ? Map1D::affine(Scalar(-a), Scalar(thi + a * lo)) : Map1D::affine(Scalar(a), Scalar(tlo - a * lo));
    pieces.push_back({detail::interval(lo, hi), {m}});
  }
  return PiecewiseMap(1, std::move(pieces));
}

inline PiecewiseMap random_monomial(std::mt19937_64& rng) {
  static const std::vector<Rational> powers{R(1, 3), R(1, 2), R(2, 3), R(3, 2), R(2), R(3), R(1)};
  Map1D m = Map1D::monomial(Scalar(R(1)), powers[rng() % powers.size()]);
  return PiecewiseMap(1, {{detail::interval(R(0), R(1)), {m}}});
}

// Product of a monomial bijection in x and an affine bijection in y.
inline PiecewiseMap random_planar(std::mt19937_64& rng) {
  auto mx = random_monomial(rng), my = random_affine(rng);
  std::vector<Piece> pieces;
  for (auto& py : my.pieces())
    pieces.push_back({Box({mx.pieces()[0].domain[0], py.domain[0]}), {mx.pieces()[0].maps[0], py.maps[0]}});
  return PiecewiseMap(2, std::move(pieces));
}

}  // namespace randmaps
