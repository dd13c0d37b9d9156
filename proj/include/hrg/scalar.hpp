#pragma once

#include <gmpxx.h>

#include <map>
#include <stdexcept>
#include <string>

namespace hrg {

using Integer = mpz_class;
using Rational = mpq_class;

// Canonical string for a rational: "p" or "p/q".
std::string to_string(const Rational& q);
Rational parse_rational(const std::string& text);

// Prime factorization of |n| (n != 0). Exponents are positive.
std::map<Integer, unsigned long> factorize_integer(const Integer& n);

// prime -> exponent. Used both for fractional radical parts and for
// the log representation of huge numbers.
using PrimePowers = std::map<Integer, Rational>;

class ArithmeticError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Exact real number of the form sum_i q_i * prod_p p^{f_ip}, with q_i rational
// and every f_ip in (0,1). Distinct radical keys are linearly independent over
// Q, so the representation is unique and equality is structural.
class Scalar {
 public:
  Scalar() = default;
  Scalar(const Rational& q);  // NOLINT(google-explicit-constructor)
  Scalar(long n) : Scalar(Rational(n)) {}  // NOLINT(google-explicit-constructor)

  static Scalar sqrt(const Rational& q);
  static Scalar root(const Rational& base, const Rational& exponent);

  bool is_zero() const { return terms_.empty(); }
  bool is_rational() const;
  Rational as_rational() const;  // throws unless is_rational()
  bool is_single_term() const { return terms_.size() == 1; }

  // -1, 0, +1. Decided exactly: rational sums directly, radical sums by
  // interval evaluation at increasing precision.
  int sign() const;

  // Raise a single positive term (or any value to an integer power).
  Scalar pow(const Rational& e) const;

  Scalar operator-() const;
  Scalar& operator+=(const Scalar& o);
  Scalar& operator-=(const Scalar& o);
  Scalar& operator*=(const Scalar& o);
  Scalar& operator/=(const Scalar& o);  // divisor must be a single term
  friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
  friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
  friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
  friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }

  friend bool operator==(const Scalar& a, const Scalar& b) { return a.terms_ == b.terms_; }
  friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }

  // Structural order, for use as a map key. Not the numeric order.
  static bool structural_less(const Scalar& a, const Scalar& b) { return a.terms_ < b.terms_; }

  double approx() const;
  std::string to_string() const;

  const std::map<PrimePowers, Rational>& terms() const { return terms_; }

 private:
  void add_term(const PrimePowers& key, const Rational& coeff);
  std::map<PrimePowers, Rational> terms_;
};

int compare(const Scalar& a, const Scalar& b);
inline bool operator<(const Scalar& a, const Scalar& b) { return compare(a, b) < 0; }
inline bool operator<=(const Scalar& a, const Scalar& b) { return compare(a, b) <= 0; }
inline bool operator>(const Scalar& a, const Scalar& b) { return compare(a, b) > 0; }
inline bool operator>=(const Scalar& a, const Scalar& b) { return compare(a, b) >= 0; }
const Scalar& min(const Scalar& a, const Scalar& b);
const Scalar& max(const Scalar& a, const Scalar& b);

// A nonnegative real kept as prod_p p^{x_p} with rational x_p (or zero).
// Lets iterates like x^(4^20) be compared without materializing them.
class LogValue {
 public:
  LogValue() = default;  // 1
  static LogValue zero();
  static LogValue from_scalar(const Scalar& s);  // s >= 0, single term

  bool is_zero() const { return zero_; }
  const PrimePowers& exponents() const { return exps_; }

  LogValue pow(const Rational& e) const;  // e > 0 when zero
  LogValue& operator*=(const LogValue& o);
  friend LogValue operator*(LogValue a, const LogValue& b) { return a *= b; }
  friend bool operator==(const LogValue& a, const LogValue& b) {
    return a.zero_ == b.zero_ && a.exps_ == b.exps_;
  }

  // Converts back when the integer parts are small enough.
  bool fits_scalar() const;
  Scalar to_scalar() const;
  std::string to_string() const;

 private:
  bool zero_ = false;
  PrimePowers exps_;
};

int compare(const LogValue& a, const LogValue& b);

// Sign of sum_p c_p log p, decided exactly.
int log_linear_sign(const PrimePowers& coeffs);

}  // namespace hrg
