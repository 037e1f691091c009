#pragma once

// Dense univariate polynomials in q over the integers and the rationals.
// Coefficient i is the coefficient of q^i; the vector is kept trimmed so
// that the zero polynomial is the empty vector.

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "quasinv/integer.hpp"

namespace quasinv {

class ZPoly {
 public:
  ZPoly() = default;
  explicit ZPoly(std::vector<Integer> coeffs);
  ZPoly(long c);  // NOLINT: constants convert implicitly
  static ZPoly monomial(const Integer& c, std::size_t exp);
  static ZPoly q() { return monomial(1, 1); }

  bool is_zero() const { return c_.empty(); }
  bool is_constant() const { return c_.size() <= 1; }
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  const Integer& lead() const { return c_.back(); }
  const std::vector<Integer>& coeffs() const { return c_; }
  Integer coeff(std::size_t i) const { return i < c_.size() ? c_[i] : Integer(0); }
  /// Largest power of q dividing this (nonzero) polynomial.
  std::size_t low_order() const;

  ZPoly operator-() const;
  ZPoly& operator+=(const ZPoly& o);
  ZPoly& operator-=(const ZPoly& o);
  ZPoly& operator*=(const Integer& s);
  friend ZPoly operator+(ZPoly a, const ZPoly& b) { return a += b; }
  friend ZPoly operator-(ZPoly a, const ZPoly& b) { return a -= b; }
  friend ZPoly operator*(const ZPoly& a, const ZPoly& b);
  friend ZPoly operator*(ZPoly a, const Integer& s) { return a *= s; }
  friend bool operator==(const ZPoly& a, const ZPoly& b) { return a.c_ == b.c_; }

  /// Exact quotient; nullopt when `d` does not divide this in Z[q].
  std::optional<ZPoly> try_divide(const ZPoly& d) const;
  /// Exact quotient; throws NotProportional-free ConsistencyError when inexact.
  ZPoly divide_exact(const ZPoly& d) const;
  ZPoly divide_exact(const Integer& s) const;
  ZPoly shift_down(std::size_t k) const;  // divide by q^k (must be exact)

  Integer content() const;  // nonnegative gcd of coefficients
  ZPoly primitive_part() const;  // content removed, leading coefficient positive
  Integer eval(const Integer& x) const;
  std::uint64_t eval_mod(std::uint64_t x, std::uint64_t p) const;
  /// Value at q = 2^k.
  Integer eval_pow2(unsigned long k) const;
  /// Inverse of eval at q = base when every coefficient lies strictly inside (-base/2, base/2).
  static ZPoly from_balanced_digits(Integer value, const Integer& base);
  Integer norm_inf() const;
  Integer norm_1() const;

  std::string to_string(const char* var = "q") const;

 private:
  void trim();
  std::vector<Integer> c_;
};

/// gcd in Z[q], normalized with positive leading coefficient (content included).
ZPoly gcd(const ZPoly& a, const ZPoly& b);
/// The n-th cyclotomic polynomial.
ZPoly cyclotomic_polynomial(std::uint64_t n);
/// Euler phi.
std::uint64_t euler_phi(std::uint64_t n);

class QPoly {
 public:
  QPoly() = default;
  explicit QPoly(std::vector<Rational> coeffs);
  explicit QPoly(const ZPoly& z);
  QPoly(long c);  // NOLINT

  bool is_zero() const { return c_.empty(); }
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  const Rational& lead() const { return c_.back(); }
  const std::vector<Rational>& coeffs() const { return c_; }
  Rational coeff(std::size_t i) const { return i < c_.size() ? c_[i] : Rational(0); }

  QPoly operator-() const;
  QPoly& operator+=(const QPoly& o);
  QPoly& operator-=(const QPoly& o);
  QPoly& operator*=(const Rational& s);
  friend QPoly operator+(QPoly a, const QPoly& b) { return a += b; }
  friend QPoly operator-(QPoly a, const QPoly& b) { return a -= b; }
  friend QPoly operator*(const QPoly& a, const QPoly& b);
  friend QPoly operator*(QPoly a, const Rational& s) { return a *= s; }
  friend bool operator==(const QPoly& a, const QPoly& b) { return a.c_ == b.c_; }

  /// Euclidean division: {quotient, remainder}.
  std::pair<QPoly, QPoly> divmod(const QPoly& d) const;
  QPoly monic() const;
  /// Scale to a primitive integer polynomial with positive leading coefficient.
  ZPoly to_primitive_zpoly() const;

 private:
  void trim();
  std::vector<Rational> c_;
};

QPoly gcd(const QPoly& a, const QPoly& b);  // monic
/// Extended Euclid: returns {g, s, t} with s*a + t*b = g monic.
struct QPolyXgcd {
  QPoly g, s, t;
};
QPolyXgcd xgcd(const QPoly& a, const QPoly& b);

}  // namespace quasinv
