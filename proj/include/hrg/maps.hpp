#pragma once

#include "hrg/boxes.hpp"

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace hrg {

class UnsupportedComposition : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// x -> a*x + b (a != 0), or x -> c*x^p with c > 0, p > 0, p != 1, on x >= 0.
class Map1D {
 public:
  enum class Kind { Affine, Monomial };

  Map1D() : a_(1) {}
  static Map1D identity() { return affine(Scalar(1), Scalar()); }
  static Map1D affine(Scalar a, Scalar b);
  static Map1D monomial(Scalar c, Rational p);

  Kind kind() const { return kind_; }
  const Scalar& slope() const { return a_; }
  const Scalar& offset() const { return b_; }
  const Scalar& coeff() const { return a_; }
  const Rational& power() const { return p_; }
  bool is_identity() const { return kind_ == Kind::Affine && a_ == Scalar(1) && b_.is_zero(); }
  bool increasing() const { return kind_ == Kind::Monomial || a_.sign() > 0; }
  // A monomial view exists for monomials and for affine maps a*x with a > 0.
  bool has_monomial_view() const;

  Scalar apply(const Scalar& x) const;
  Interval image(const Interval& iv) const;
  Interval preimage(const Interval& iv) const { return inverse().image(iv); }
  Map1D inverse() const;
  // (*this) ∘ inner
  Map1D after(const Map1D& inner) const;

  friend bool operator==(const Map1D& x, const Map1D& y) {
    return x.kind_ == y.kind_ && x.a_ == y.a_ && x.b_ == y.b_ && x.p_ == y.p_;
  }
  friend bool operator!=(const Map1D& x, const Map1D& y) { return !(x == y); }
  static bool structural_less(const Map1D& x, const Map1D& y);

  std::string to_string(const std::string& var = "x") const;

 private:
  Kind kind_ = Kind::Affine;
  Scalar a_, b_;  // affine a,b; monomial coefficient in a_
  Rational p_ = 1;
};

using MapVec = std::vector<Map1D>;
bool mapvec_less(const MapVec& x, const MapVec& y);
MapVec compose_maps(const MapVec& outer, const MapVec& inner);
MapVec invert_maps(const MapVec& m);
Box map_box(const MapVec& m, const Box& b);
Box preimage_box(const MapVec& m, const Box& b);
bool is_identity(const MapVec& m);
std::string mapvec_to_string(const MapVec& m);

// Sum of monomials coeff * prod_i x_i^{s_i}.
class Weight {
 public:
  Weight() = default;
  static Weight constant(std::size_t dim, const Scalar& c);
  static Weight monomial(const Scalar& c, std::vector<Rational> exps);

  bool is_zero() const { return terms_.empty(); }
  bool is_single() const { return terms_.size() == 1; }
  const std::map<std::vector<Rational>, Scalar>& terms() const { return terms_; }

  Weight operator*(const Weight& o) const;
  Weight operator+(const Weight& o) const;
  Weight operator-() const;
  // w ∘ m. Affine coordinates with offset need exponent zero there.
  Weight after(const MapVec& m) const;
  // Square root of a single positive monomial.
  Weight sqrt() const;
  Scalar eval(const std::vector<Scalar>& x) const;

  friend bool operator==(const Weight& a, const Weight& b) { return a.terms_ == b.terms_; }
  friend bool operator!=(const Weight& a, const Weight& b) { return !(a == b); }
  std::string to_string() const;

 private:
  void add(const std::vector<Rational>& e, const Scalar& c);
  std::map<std::vector<Rational>, Scalar> terms_;
};

// |Jacobian| of a coordinatewise map, as a weight on its domain.
Weight jacobian(const MapVec& m);

struct Piece {
  Box domain;
  MapVec maps;
};

class PiecewiseMap {
 public:
  PiecewiseMap() = default;
  PiecewiseMap(std::size_t dim, std::vector<Piece> pieces) : dim_(dim), pieces_(std::move(pieces)) {}
  static PiecewiseMap identity_on(const BoxSet& s);

  std::size_t dim() const { return dim_; }
  const std::vector<Piece>& pieces() const { return pieces_; }
  BoxSet domain() const;
  BoxSet image() const;
  BoxSet image_of(const BoxSet& s) const;
  BoxSet preimage_of(const BoxSet& s) const;
  PiecewiseMap inverse() const;
  PiecewiseMap restricted(const BoxSet& s) const;

  std::string to_string() const;

 private:
  std::size_t dim_ = 1;
  std::vector<Piece> pieces_;
};

// f ∘ g; requires image(g) ⊆ domain(f) a.e.
PiecewiseMap map_compose(const PiecewiseMap& f, const PiecewiseMap& g);
bool map_equal_ae(const PiecewiseMap& f, const PiecewiseMap& g);

// Bijectivity data of a piecewise map, checked exactly.
struct MapDefect {
  bool ok = true;
  std::string message;
};
MapDefect check_piecewise_bijection(const PiecewiseMap& f);

struct WeightPiece {
  Box domain;
  Weight weight;
};

// Piecewise weight function; equality is a.e. after common refinement.
class PiecewiseWeight {
 public:
  PiecewiseWeight() = default;
  PiecewiseWeight(std::size_t dim, std::vector<WeightPiece> pieces) : dim_(dim), pieces_(std::move(pieces)) {}
  const std::vector<WeightPiece>& pieces() const { return pieces_; }
  std::size_t dim() const { return dim_; }
  PiecewiseWeight operator*(const PiecewiseWeight& o) const;
  // this ∘ g, on the domain of g.
  PiecewiseWeight after(const PiecewiseMap& g) const;
  std::string to_string() const;

 private:
  std::size_t dim_ = 1;
  std::vector<WeightPiece> pieces_;
};

bool weight_equal_ae(const PiecewiseWeight& a, const PiecewiseWeight& b);

// Φ_f = d(η∘f)/dη on the domain of f.
PiecewiseWeight rn_derivative(const PiecewiseMap& f);

}  // namespace hrg
