#include "hrg/maps.hpp"

#include <tuple>

namespace hrg {

namespace {

Scalar abs_scalar(const Scalar& s) { return s.sign() < 0 ? -s : s; }

const char* var_name(std::size_t i) {
  static const char* names[] = {"x", "y", "z", "w"};
  return i < 4 ? names[i] : "t";
}

std::string rational_exp(const Rational& p) {
  return p.get_den() == 1 && p > 0 ? p.get_str() : "(" + p.get_str() + ")";
}

std::string factor_string(const Scalar& c) {
  // Multi-term coefficients need parentheses inside a product.
  return c.is_single_term() ? c.to_string() : "(" + c.to_string() + ")";
}

}  // namespace

Map1D Map1D::affine(Scalar a, Scalar b) {
  if (a.is_zero()) throw std::invalid_argument("affine map with zero slope");
  Map1D m;
  m.kind_ = Kind::Affine;
  m.a_ = std::move(a);
  m.b_ = std::move(b);
  m.p_ = 1;
  return m;
}

Map1D Map1D::monomial(Scalar c, Rational p) {
  p.canonicalize();
  if (c.sign() <= 0) throw std::invalid_argument("monomial map needs a positive coefficient");
  if (p <= 0) throw std::invalid_argument("monomial map needs a positive exponent");
  if (p == 1) return affine(std::move(c), Scalar());
  Map1D m;
  m.kind_ = Kind::Monomial;
  m.a_ = std::move(c);
  m.p_ = p;
  return m;
}

bool Map1D::has_monomial_view() const {
  return kind_ == Kind::Monomial || (b_.is_zero() && a_.sign() > 0);
}

Scalar Map1D::apply(const Scalar& x) const {
  if (kind_ == Kind::Affine) return a_ * x + b_;
  if (x.sign() < 0) throw std::domain_error("monomial map applied to a negative value");
  return a_ * x.pow(p_);
}

Interval Map1D::image(const Interval& iv) const {
  Scalar u = apply(iv.lo), v = apply(iv.hi);
  return increasing() ? Interval{u, v} : Interval{v, u};
}

Map1D Map1D::inverse() const {
  if (kind_ == Kind::Affine) {
    Scalar inv = Scalar(1) / a_;
    return affine(inv, -(b_ * inv));
  }
  Rational q = 1 / p_;
  return monomial(a_.pow(-q), q);
}

Map1D Map1D::after(const Map1D& inner) const {
  if (kind_ == Kind::Affine && inner.kind_ == Kind::Affine)
    return affine(a_ * inner.a_, a_ * inner.b_ + b_);
  if (!has_monomial_view() || !inner.has_monomial_view())
    throw UnsupportedComposition("cannot compose " + to_string() + " after " + inner.to_string() +
                                 " within the affine/monomial classes");
  // c1 (c2 x^p2)^p1
  return monomial(a_ * inner.a_.pow(p_), p_ * inner.p_);
}

bool Map1D::structural_less(const Map1D& x, const Map1D& y) {
  if (x.kind_ != y.kind_) return x.kind_ < y.kind_;
  if (x.a_ != y.a_) return Scalar::structural_less(x.a_, y.a_);
  if (x.b_ != y.b_) return Scalar::structural_less(x.b_, y.b_);
  return x.p_ < y.p_;
}

std::string Map1D::to_string(const std::string& var) const {
  if (kind_ == Kind::Monomial) {
    std::string m = var + "^" + rational_exp(p_);
    return a_ == Scalar(1) ? m : factor_string(a_) + "*" + m;
  }
  std::string s;
  if (a_ == Scalar(1))
    s = var;
  else if (a_ == Scalar(-1))
    s = "-" + var;
  else
    s = factor_string(a_) + "*" + var;
  if (b_.is_zero()) return s;
  if (b_.is_single_term() && b_.sign() < 0) return s + " - " + (-b_).to_string();
  return s + " + " + factor_string(b_);
}

bool mapvec_less(const MapVec& x, const MapVec& y) {
  return std::lexicographical_compare(x.begin(), x.end(), y.begin(), y.end(), Map1D::structural_less);
}

MapVec compose_maps(const MapVec& outer, const MapVec& inner) {
  MapVec out;
  for (std::size_t i = 0; i < outer.size(); ++i) out.push_back(outer[i].after(inner[i]));
  return out;
}

MapVec invert_maps(const MapVec& m) {
  MapVec out;
  for (auto& f : m) out.push_back(f.inverse());
  return out;
}

Box map_box(const MapVec& m, const Box& b) {
  std::vector<Interval> s;
  for (std::size_t i = 0; i < m.size(); ++i) s.push_back(m[i].image(b[i]));
  return Box(std::move(s));
}

Box preimage_box(const MapVec& m, const Box& b) { return map_box(invert_maps(m), b); }

bool is_identity(const MapVec& m) {
  for (auto& f : m)
    if (!f.is_identity()) return false;
  return true;
}

std::string mapvec_to_string(const MapVec& m) {
  std::string s = "(";
  for (std::size_t i = 0; i < m.size(); ++i) s += (i ? ", " : "") + m[i].to_string(var_name(i));
  return s + ")";
}

Weight Weight::constant(std::size_t dim, const Scalar& c) {
  Weight w;
  w.add(std::vector<Rational>(dim, Rational(0)), c);
  return w;
}

Weight Weight::monomial(const Scalar& c, std::vector<Rational> exps) {
  Weight w;
  w.add(exps, c);
  return w;
}

void Weight::add(const std::vector<Rational>& e, const Scalar& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

Weight Weight::operator*(const Weight& o) const {
  Weight out;
  for (auto& [ea, ca] : terms_)
    for (auto& [eb, cb] : o.terms_) {
      std::vector<Rational> e = ea;
      for (std::size_t i = 0; i < e.size(); ++i) e[i] += eb[i];
      out.add(e, ca * cb);
    }
  return out;
}

Weight Weight::operator+(const Weight& o) const {
  Weight out = *this;
  for (auto& [e, c] : o.terms_) out.add(e, c);
  return out;
}

Weight Weight::operator-() const {
  Weight out = *this;
  for (auto& [e, c] : out.terms_) c = -c;
  return out;
}

Weight Weight::after(const MapVec& m) const {
  Weight out;
  for (auto& [e, c] : terms_) {
    Scalar coeff = c;
    std::vector<Rational> exps(e.size(), Rational(0));
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      if (!m[i].has_monomial_view())
        throw UnsupportedComposition("weight " + to_string() + " cannot be composed with " +
                                     m[i].to_string(var_name(i)));
      coeff *= m[i].coeff().pow(e[i]);
      exps[i] = e[i] * m[i].power();
    }
    out.add(exps, coeff);
  }
  return out;
}

Weight Weight::sqrt() const {
  if (terms_.empty()) return *this;
  if (terms_.size() != 1) throw ArithmeticError("square root of a weight with several terms");
  auto& [e, c] = *terms_.begin();
  if (c.sign() <= 0) throw ArithmeticError("square root of a nonpositive weight");
  std::vector<Rational> h;
  for (auto& x : e) h.push_back(x / 2);
  return monomial(c.pow(Rational(1, 2)), h);
}

Scalar Weight::eval(const std::vector<Scalar>& x) const {
  Scalar s;
  for (auto& [e, c] : terms_) {
    Scalar t = c;
    for (std::size_t i = 0; i < e.size(); ++i)
      if (e[i] != 0) t *= x[i].pow(e[i]);
    s += t;
  }
  return s;
}

std::string Weight::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  for (auto& [e, c] : terms_) {
    std::string vars;
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      vars += (vars.empty() ? "" : "*") + std::string(var_name(i));
      if (e[i] != 1) vars += "^" + rational_exp(e[i]);
    }
    std::string t = vars.empty() ? factor_string(c) : c == Scalar(1) ? vars : factor_string(c) + "*" + vars;
    out += (out.empty() ? "" : " + ") + t;
  }
  return out;
}

Weight jacobian(const MapVec& m) {
  Scalar c(1);
  std::vector<Rational> e;
  for (auto& f : m) {
    if (f.kind() == Map1D::Kind::Affine) {
      c *= abs_scalar(f.slope());
      e.push_back(0);
    } else {
      c *= f.coeff() * Scalar(f.power());
      e.push_back(f.power() - 1);
    }
  }
  return Weight::monomial(c, e);
}

PiecewiseMap PiecewiseMap::identity_on(const BoxSet& s) {
  std::vector<Piece> pieces;
  for (auto& b : s.boxes()) pieces.push_back({b, MapVec(s.dim(), Map1D::identity())});
  return PiecewiseMap(s.dim(), std::move(pieces));
}

BoxSet PiecewiseMap::domain() const {
  std::vector<Box> bs;
  for (auto& p : pieces_) bs.push_back(p.domain);
  return BoxSet::of(dim_, bs);
}

BoxSet PiecewiseMap::image() const {
  std::vector<Box> bs;
  for (auto& p : pieces_) bs.push_back(map_box(p.maps, p.domain));
  return BoxSet::of(dim_, bs);
}

BoxSet PiecewiseMap::image_of(const BoxSet& s) const {
  std::vector<Box> bs;
  for (auto& p : pieces_)
    for (auto& b : s.boxes())
      if (auto c = p.domain.intersect(b)) bs.push_back(map_box(p.maps, *c));
  return BoxSet::of(dim_, bs);
}

BoxSet PiecewiseMap::preimage_of(const BoxSet& s) const {
  std::vector<Box> bs;
  for (auto& p : pieces_) {
    Box img = map_box(p.maps, p.domain);
    for (auto& b : s.boxes())
      if (auto c = img.intersect(b))
        if (auto d = preimage_box(p.maps, *c).intersect(p.domain)) bs.push_back(*d);
  }
  return BoxSet::of(dim_, bs);
}

PiecewiseMap PiecewiseMap::inverse() const {
  std::vector<Piece> out;
  for (auto& p : pieces_) out.push_back({map_box(p.maps, p.domain), invert_maps(p.maps)});
  return PiecewiseMap(dim_, std::move(out));
}

PiecewiseMap PiecewiseMap::restricted(const BoxSet& s) const {
  std::vector<Piece> out;
  for (auto& p : pieces_)
    for (auto& b : s.boxes())
      if (auto c = p.domain.intersect(b)) out.push_back({*c, p.maps});
  return PiecewiseMap(dim_, std::move(out));
}

std::string PiecewiseMap::to_string() const {
  std::string s;
  for (auto& p : pieces_) s += (s.empty() ? "" : "; ") + p.domain.to_string() + " -> " + mapvec_to_string(p.maps);
  return s.empty() ? "{}" : s;
}

PiecewiseMap map_compose(const PiecewiseMap& f, const PiecewiseMap& g) {
  if (!g.image().subset_ae(f.domain()))
    throw std::invalid_argument("composition: image " + g.image().to_string() + " is not inside domain " +
                                f.domain().to_string());
  std::vector<Piece> out;
  for (auto& pg : g.pieces()) {
    Box img = map_box(pg.maps, pg.domain);
    for (auto& pf : f.pieces()) {
      auto inter = img.intersect(pf.domain);
      if (!inter) continue;
      auto sub = preimage_box(pg.maps, *inter).intersect(pg.domain);
      if (!sub) continue;
      MapVec composite;
      try {
        composite = compose_maps(pf.maps, pg.maps);
      } catch (const UnsupportedComposition& e) {
        throw UnsupportedComposition("piece " + pf.domain.to_string() + " after piece " + pg.domain.to_string() +
                                     ": " + e.what());
      }
      out.push_back({*sub, std::move(composite)});
    }
  }
  return PiecewiseMap(f.dim(), std::move(out));
}

bool map_equal_ae(const PiecewiseMap& f, const PiecewiseMap& g) {
  if (!f.domain().equal_ae(g.domain())) return false;
  for (auto& a : f.pieces())
    for (auto& b : g.pieces())
      if (a.domain.intersect(b.domain) && a.maps != b.maps) return false;
  return true;
}

MapDefect check_piecewise_bijection(const PiecewiseMap& f) {
  auto& ps = f.pieces();
  for (auto& p : ps)
    for (std::size_t i = 0; i < p.maps.size(); ++i)
      if (p.maps[i].kind() == Map1D::Kind::Monomial && p.domain[i].lo.sign() < 0)
        return {false, "monomial coordinate on negative domain " + p.domain.to_string()};
  for (std::size_t i = 0; i < ps.size(); ++i)
    for (std::size_t j = i + 1; j < ps.size(); ++j) {
      if (auto c = ps[i].domain.intersect(ps[j].domain))
        return {false, "piece domains overlap on " + c->to_string()};
      if (auto c = map_box(ps[i].maps, ps[i].domain).intersect(map_box(ps[j].maps, ps[j].domain)))
        return {false, "piece images overlap on " + c->to_string()};
    }
  return {};
}

PiecewiseWeight PiecewiseWeight::operator*(const PiecewiseWeight& o) const {
  std::vector<WeightPiece> out;
  for (auto& a : pieces_)
    for (auto& b : o.pieces_)
      if (auto c = a.domain.intersect(b.domain)) out.push_back({*c, a.weight * b.weight});
  return PiecewiseWeight(dim_, std::move(out));
}

PiecewiseWeight PiecewiseWeight::after(const PiecewiseMap& g) const {
  std::vector<WeightPiece> out;
  for (auto& pg : g.pieces()) {
    Box img = map_box(pg.maps, pg.domain);
    for (auto& w : pieces_) {
      auto inter = img.intersect(w.domain);
      if (!inter) continue;
      auto sub = preimage_box(pg.maps, *inter).intersect(pg.domain);
      if (sub) out.push_back({*sub, w.weight.after(pg.maps)});
    }
  }
  return PiecewiseWeight(g.dim(), std::move(out));
}

std::string PiecewiseWeight::to_string() const {
  std::string s;
  for (auto& p : pieces_) s += (s.empty() ? "" : "; ") + p.domain.to_string() + " : " + p.weight.to_string();
  return s.empty() ? "{}" : s;
}

bool weight_equal_ae(const PiecewiseWeight& a, const PiecewiseWeight& b) {
  std::vector<Box> da, db;
  for (auto& p : a.pieces()) da.push_back(p.domain);
  for (auto& p : b.pieces()) db.push_back(p.domain);
  if (!BoxSet::of(a.dim(), da).equal_ae(BoxSet::of(b.dim(), db))) return false;
  for (auto& p : a.pieces())
    for (auto& q : b.pieces())
      if (p.domain.intersect(q.domain) && p.weight != q.weight) return false;
  return true;
}

PiecewiseWeight rn_derivative(const PiecewiseMap& f) {
  std::vector<WeightPiece> out;
  for (auto& p : f.pieces()) out.push_back({p.domain, jacobian(p.maps)});
  return PiecewiseWeight(f.dim(), std::move(out));
}

}  // namespace hrg
