#include "hrg/scalar.hpp"

#include <mpfr.h>

#include <algorithm>
#include <cctype>
#include <vector>

namespace hrg {

std::string to_string(const Rational& q) { return q.get_str(); }

Rational parse_rational(const std::string& text) {
  std::string t;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) t += c;
  if (t.empty()) throw std::invalid_argument("empty rational");
  std::size_t i = (t[0] == '-' || t[0] == '+') ? 1 : 0;
  bool seen_slash = false, digit_before = false, digit_after = false;
  for (std::size_t j = i; j < t.size(); ++j) {
    char c = t[j];
    if (c == '/' && !seen_slash) {
      seen_slash = true;
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      (seen_slash ? digit_after : digit_before) = true;
    } else {
      throw std::invalid_argument("malformed rational '" + text + "'");
    }
  }
  if (!digit_before || (seen_slash && !digit_after))
    throw std::invalid_argument("malformed rational '" + text + "'");
  if (t[0] == '+') t.erase(0, 1);
  Rational q(t, 10);
  if (q.get_den() == 0) throw std::invalid_argument("zero denominator in '" + text + "'");
  q.canonicalize();
  return q;
}

namespace {

// Brent's variant of Pollard rho; n is odd composite.
Integer pollard_rho(const Integer& n) {
  for (unsigned long c = 1;; ++c) {
    Integer y = 2, x, g = 1, q = 1, ys;
    unsigned long r = 1, m = 128;
    auto f = [&](const Integer& v) {
      Integer w = v * v + c;
      mpz_mod(w.get_mpz_t(), w.get_mpz_t(), n.get_mpz_t());
      return w;
    };
    do {
      x = y;
      for (unsigned long i = 0; i < r; ++i) y = f(y);
      unsigned long k = 0;
      do {
        ys = y;
        for (unsigned long i = 0; i < std::min(m, r - k); ++i) {
          y = f(y);
          Integer d = abs(x - y);
          q = (q * d) % n;
        }
        mpz_gcd(g.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
        k += m;
      } while (k < r && g == 1);
      r *= 2;
    } while (g == 1);
    if (g == n) {
      do {
        ys = f(ys);
        Integer d = abs(x - ys);
        mpz_gcd(g.get_mpz_t(), d.get_mpz_t(), n.get_mpz_t());
      } while (g == 1);
    }
    if (g != n) return g;
  }
}

void factor_into(const Integer& n, std::map<Integer, unsigned long>& out) {
  if (n == 1) return;
  if (mpz_probab_prime_p(n.get_mpz_t(), 30) > 0) {
    ++out[n];
    return;
  }
  Integer d = pollard_rho(n);
  factor_into(d, out);
  factor_into(n / d, out);
}

}  // namespace

std::map<Integer, unsigned long> factorize_integer(const Integer& n_in) {
  if (n_in == 0) throw ArithmeticError("factorization of zero");
  Integer n = abs(n_in);
  std::map<Integer, unsigned long> out;
  for (unsigned long p = 2; p < 10000 && p * p <= n; p += (p == 2 ? 1 : 2)) {
    while (mpz_divisible_ui_p(n.get_mpz_t(), p)) {
      ++out[Integer(p)];
      n /= p;
    }
  }
  factor_into(n, out);
  return out;
}

namespace {

constexpr long kMaxIntegerBits = 1L << 22;

Integer floor_of(const Rational& q) {
  Integer f;
  mpz_fdiv_q(f.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return f;
}

Rational int_power(const Integer& p, const Integer& k) {
  if (!k.fits_slong_p() || abs(k) * Integer(mpz_sizeinbase(p.get_mpz_t(), 2)) > kMaxIntegerBits)
    throw ArithmeticError("exact value too large to materialize");
  long e = k.get_si();
  Integer r;
  mpz_pow_ui(r.get_mpz_t(), p.get_mpz_t(), static_cast<unsigned long>(e < 0 ? -e : e));
  return e < 0 ? Rational(Integer(1), r) : Rational(r);
}

// Moves integer parts of exponents into the coefficient.
void normalize_key(Rational& coeff, PrimePowers& key) {
  for (auto it = key.begin(); it != key.end();) {
    Integer k = floor_of(it->second);
    if (k != 0) {
      coeff *= int_power(it->first, k);
      it->second -= k;
    }
    if (it->second == 0)
      it = key.erase(it);
    else
      ++it;
  }
  coeff.canonicalize();
}

PrimePowers rational_prime_powers(const Rational& q) {
  PrimePowers out;
  if (q.get_num() != 1 && q.get_num() != -1)
    for (auto& [p, e] : factorize_integer(q.get_num())) out[p] += Rational(e);
  if (q.get_den() != 1)
    for (auto& [p, e] : factorize_integer(q.get_den())) out[p] -= Rational(e);
  return out;
}

class Mpfr {
 public:
  explicit Mpfr(mpfr_prec_t prec) { mpfr_init2(v_, prec); mpfr_set_zero(v_, 1); }
  ~Mpfr() { mpfr_clear(v_); }
  Mpfr(const Mpfr&) = delete;
  Mpfr& operator=(const Mpfr&) = delete;
  mpfr_ptr get() { return v_; }

 private:
  mpfr_t v_;
};

// Encloses log(p) in [lo, hi].
void log_prime(const Integer& p, Mpfr& lo, Mpfr& hi) {
  mpfr_set_z(lo.get(), p.get_mpz_t(), MPFR_RNDD);
  mpfr_set_z(hi.get(), p.get_mpz_t(), MPFR_RNDU);
  mpfr_log(lo.get(), lo.get(), MPFR_RNDD);
  mpfr_log(hi.get(), hi.get(), MPFR_RNDU);
}

// Encloses sum_p c_p log p in [lo, hi].
void log_linear_enclosure(const PrimePowers& coeffs, mpfr_prec_t prec, Mpfr& lo, Mpfr& hi) {
  mpfr_set_zero(lo.get(), 1);
  mpfr_set_zero(hi.get(), 1);
  Mpfr llo(prec), lhi(prec), tlo(prec), thi(prec);
  for (auto& [p, c] : coeffs) {
    if (c == 0) continue;
    log_prime(p, llo, lhi);
    if (c > 0) {
      mpfr_mul_q(tlo.get(), llo.get(), c.get_mpq_t(), MPFR_RNDD);
      mpfr_mul_q(thi.get(), lhi.get(), c.get_mpq_t(), MPFR_RNDU);
    } else {
      mpfr_mul_q(tlo.get(), lhi.get(), c.get_mpq_t(), MPFR_RNDD);
      mpfr_mul_q(thi.get(), llo.get(), c.get_mpq_t(), MPFR_RNDU);
    }
    mpfr_add(lo.get(), lo.get(), tlo.get(), MPFR_RNDD);
    mpfr_add(hi.get(), hi.get(), thi.get(), MPFR_RNDU);
  }
}

constexpr mpfr_prec_t kStartPrec = 64;
constexpr mpfr_prec_t kMaxPrec = 1 << 18;

}  // namespace

Scalar::Scalar(const Rational& q) {
  Rational c = q;
  c.canonicalize();
  if (c != 0) terms_[{}] = c;
}

void Scalar::add_term(const PrimePowers& key, const Rational& coeff) {
  if (coeff == 0) return;
  auto [it, inserted] = terms_.emplace(key, coeff);
  if (!inserted) {
    it->second += coeff;
    if (it->second == 0) terms_.erase(it);
  }
}

Scalar Scalar::root(const Rational& base, const Rational& exponent) {
  if (base == 0) {
    if (exponent <= 0) throw ArithmeticError("zero to a nonpositive power");
    return Scalar();
  }
  if (base < 0) throw ArithmeticError("fractional power of a negative number");
  PrimePowers key;
  for (auto& [p, e] : rational_prime_powers(base)) key[p] = e * exponent;
  Rational coeff = 1;
  normalize_key(coeff, key);
  Scalar s;
  s.terms_[key] = coeff;
  return s;
}

Scalar Scalar::sqrt(const Rational& q) { return root(q, Rational(1, 2)); }

bool Scalar::is_rational() const {
  return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.empty());
}

Rational Scalar::as_rational() const {
  if (!is_rational()) throw ArithmeticError("value " + to_string() + " is irrational");
  return terms_.empty() ? Rational(0) : terms_.begin()->second;
}

Scalar Scalar::operator-() const {
  Scalar r = *this;
  for (auto& [k, c] : r.terms_) c = -c;
  return r;
}

Scalar& Scalar::operator+=(const Scalar& o) {
  for (auto& [k, c] : o.terms_) add_term(k, c);
  return *this;
}

Scalar& Scalar::operator-=(const Scalar& o) {
  for (auto& [k, c] : o.terms_) add_term(k, -c);
  return *this;
}

Scalar& Scalar::operator*=(const Scalar& o) {
  Scalar out;
  for (auto& [ka, ca] : terms_) {
    for (auto& [kb, cb] : o.terms_) {
      PrimePowers key = ka;
      for (auto& [p, e] : kb) key[p] += e;
      Rational coeff = ca * cb;
      normalize_key(coeff, key);
      out.add_term(key, coeff);
    }
  }
  *this = std::move(out);
  return *this;
}

Scalar& Scalar::operator/=(const Scalar& o) {
  if (o.is_zero()) throw ArithmeticError("division by zero");
  if (!o.is_single_term()) throw ArithmeticError("division by a radical sum");
  auto& [k, c] = *o.terms_.begin();
  PrimePowers key;
  for (auto& [p, e] : k) key[p] = -e;
  Rational coeff = 1 / c;
  normalize_key(coeff, key);
  Scalar inv;
  inv.terms_[key] = coeff;
  return *this *= inv;
}

Scalar Scalar::pow(const Rational& e) const {
  if (e.get_den() == 1) {
    Integer n = e.get_num();
    if (n == 0) return Scalar(1);
    if (is_zero()) {
      if (n < 0) throw ArithmeticError("zero to a negative power");
      return Scalar();
    }
    if (!n.fits_slong_p()) throw ArithmeticError("exponent too large");
    long k = n.get_si();
    Scalar base = k < 0 ? Scalar(1) / *this : *this;
    unsigned long u = static_cast<unsigned long>(k < 0 ? -k : k);
    Scalar result(1);
    while (u) {
      if (u & 1) result *= base;
      u >>= 1;
      if (u) base *= base;
    }
    return result;
  }
  if (is_zero()) {
    if (e <= 0) throw ArithmeticError("zero to a nonpositive power");
    return Scalar();
  }
  if (!is_single_term()) throw ArithmeticError("fractional power of a radical sum");
  auto& [k, c] = *terms_.begin();
  if (c < 0) throw ArithmeticError("fractional power of a negative number");
  Scalar result = root(c, e);
  Scalar rad;
  PrimePowers key;
  for (auto& [p, f] : k) key[p] = f * e;
  Rational coeff = 1;
  normalize_key(coeff, key);
  rad.terms_[key] = coeff;
  return result * rad;
}

int Scalar::sign() const {
  if (terms_.empty()) return 0;
  if (terms_.size() == 1) return sgn(terms_.begin()->second);
  for (mpfr_prec_t prec = kStartPrec; prec <= kMaxPrec; prec *= 2) {
    Mpfr lo(prec), hi(prec), tlo(prec), thi(prec), rlo(prec), rhi(prec);
    for (auto& [key, q] : terms_) {
      log_linear_enclosure(key, prec, rlo, rhi);
      mpfr_exp(rlo.get(), rlo.get(), MPFR_RNDD);
      mpfr_exp(rhi.get(), rhi.get(), MPFR_RNDU);
      if (q > 0) {
        mpfr_mul_q(tlo.get(), rlo.get(), q.get_mpq_t(), MPFR_RNDD);
        mpfr_mul_q(thi.get(), rhi.get(), q.get_mpq_t(), MPFR_RNDU);
      } else {
        mpfr_mul_q(tlo.get(), rhi.get(), q.get_mpq_t(), MPFR_RNDD);
        mpfr_mul_q(thi.get(), rlo.get(), q.get_mpq_t(), MPFR_RNDU);
      }
      mpfr_add(lo.get(), lo.get(), tlo.get(), MPFR_RNDD);
      mpfr_add(hi.get(), hi.get(), thi.get(), MPFR_RNDU);
    }
    if (mpfr_sgn(lo.get()) > 0) return 1;
    if (mpfr_sgn(hi.get()) < 0) return -1;
  }
  throw ArithmeticError("sign undecided at maximum precision");
}

double Scalar::approx() const {
  Mpfr acc(128), lo(128), hi(128), t(128);
  for (auto& [key, q] : terms_) {
    log_linear_enclosure(key, 128, lo, hi);
    mpfr_exp(t.get(), lo.get(), MPFR_RNDN);
    mpfr_mul_q(t.get(), t.get(), q.get_mpq_t(), MPFR_RNDN);
    mpfr_add(acc.get(), acc.get(), t.get(), MPFR_RNDN);
  }
  return mpfr_get_d(acc.get(), MPFR_RNDN);
}

namespace {

std::string radical_string(const PrimePowers& key) {
  bool all_half = std::all_of(key.begin(), key.end(),
                              [](const auto& kv) { return kv.second == Rational(1, 2); });
  if (all_half) {
    Integer n = 1;
    for (auto& kv : key) n *= kv.first;
    return "sqrt(" + n.get_str() + ")";
  }
  std::string s;
  for (auto& [p, e] : key) {
    if (!s.empty()) s += "*";
    s += p.get_str() + "^(" + e.get_str() + ")";
  }
  return s;
}

}  // namespace

std::string Scalar::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  bool first = true;
  for (auto& [key, c] : terms_) {
    Rational mag = abs(c);
    std::string body;
    if (key.empty())
      body = mag.get_str();
    else if (mag == 1)
      body = radical_string(key);
    else
      body = mag.get_str() + "*" + radical_string(key);
    if (first)
      out = (c < 0 ? "-" : "") + body;
    else
      out += (c < 0 ? " - " : " + ") + body;
    first = false;
  }
  return out;
}

int compare(const Scalar& a, const Scalar& b) {
  if (a == b) return 0;
  return (a - b).sign();
}

const Scalar& min(const Scalar& a, const Scalar& b) { return compare(b, a) < 0 ? b : a; }
const Scalar& max(const Scalar& a, const Scalar& b) { return compare(b, a) > 0 ? b : a; }

int log_linear_sign(const PrimePowers& coeffs) {
  bool all_zero = std::all_of(coeffs.begin(), coeffs.end(),
                              [](const auto& kv) { return kv.second == 0; });
  if (all_zero) return 0;
  for (mpfr_prec_t prec = kStartPrec; prec <= kMaxPrec; prec *= 2) {
    Mpfr lo(prec), hi(prec);
    log_linear_enclosure(coeffs, prec, lo, hi);
    if (mpfr_sgn(lo.get()) > 0) return 1;
    if (mpfr_sgn(hi.get()) < 0) return -1;
  }
  throw ArithmeticError("log sign undecided at maximum precision");
}

LogValue LogValue::zero() {
  LogValue v;
  v.zero_ = true;
  return v;
}

LogValue LogValue::from_scalar(const Scalar& s) {
  if (s.is_zero()) return zero();
  if (!s.is_single_term() || s.sign() < 0)
    throw ArithmeticError("log form needs a single positive term, got " + s.to_string());
  auto& [key, c] = *s.terms().begin();
  LogValue v;
  v.exps_ = rational_prime_powers(c);
  for (auto& [p, e] : key) v.exps_[p] += e;
  for (auto it = v.exps_.begin(); it != v.exps_.end();)
    it = it->second == 0 ? v.exps_.erase(it) : std::next(it);
  return v;
}

LogValue LogValue::pow(const Rational& e) const {
  if (zero_) {
    if (e <= 0) throw ArithmeticError("zero to a nonpositive power");
    return *this;
  }
  LogValue v;
  if (e == 0) return v;
  for (auto& [p, x] : exps_) v.exps_[p] = x * e;
  return v;
}

LogValue& LogValue::operator*=(const LogValue& o) {
  if (zero_ || o.zero_) return *this = zero();
  for (auto& [p, x] : o.exps_) {
    Rational& slot = exps_[p];
    slot += x;
    if (slot == 0) exps_.erase(p);
  }
  return *this;
}

bool LogValue::fits_scalar() const {
  if (zero_) return true;
  Integer bits = 0;
  for (auto& [p, x] : exps_)
    bits += abs(floor_of(x)) * Integer(mpz_sizeinbase(p.get_mpz_t(), 2));
  return bits < 4096;
}

Scalar LogValue::to_scalar() const {
  if (zero_) return Scalar();
  Scalar s(1);
  for (auto& [p, x] : exps_) s *= Scalar::root(Rational(p), x);
  return s;
}

std::string LogValue::to_string() const {
  if (fits_scalar()) return to_scalar().to_string();
  std::string s;
  for (auto& [p, x] : exps_) {
    if (!s.empty()) s += "*";
    s += p.get_str() + "^(" + x.get_str() + ")";
  }
  return s;
}

int compare(const LogValue& a, const LogValue& b) {
  if (a.is_zero() || b.is_zero()) return static_cast<int>(!a.is_zero()) - static_cast<int>(!b.is_zero());
  PrimePowers diff = a.exponents();
  for (auto& [p, x] : b.exponents()) diff[p] -= x;
  return log_linear_sign(diff);
}

}  // namespace hrg
