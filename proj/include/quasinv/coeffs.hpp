#pragma once

// Exact coefficient fields. Every field type F exposes the same interface:
//
//   using Elem;            canonical element representation
//   zero(), one(), from_int(long), from_integer(Integer), from_rational(Rational)
//   add, sub, mul, neg, inv, is_zero, eq, add_to, mul_add
//   characteristic(), has_q(), q_power(long)
//   to_string(Elem), to_json(Elem), spec()
//
// Field objects are cheap to copy; heavier state is shared behind a pointer.

#include <json.hpp>

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "quasinv/errors.hpp"
#include "quasinv/integer.hpp"
#include "quasinv/upoly.hpp"

namespace quasinv {

using json = nlohmann::json;

enum class DomainKind { Rational, PrimeField, Cyclotomic, FormalQ };

struct DomainSpec {
  DomainKind kind = DomainKind::Rational;
  std::uint64_t p = 0;  // prime for PrimeField, order of the root of unity for Cyclotomic

  static DomainSpec rational() { return {DomainKind::Rational, 0}; }
  static DomainSpec prime_field(std::uint64_t p) { return {DomainKind::PrimeField, p}; }
  static DomainSpec cyclotomic(std::uint64_t p) { return {DomainKind::Cyclotomic, p}; }
  static DomainSpec formal_q() { return {DomainKind::FormalQ, 0}; }

  std::uint64_t characteristic() const { return kind == DomainKind::PrimeField ? p : 0; }
  bool has_q() const { return kind == DomainKind::Cyclotomic || kind == DomainKind::FormalQ; }
  /// "Rational", "PrimeField(7)", "Cyclotomic(3)", "FormalQ".
  std::string name() const;
  /// Throws InvalidDomain when the invariants fail.
  void validate() const;
  /// Accepts the forms produced by name(), case-insensitively.
  static DomainSpec parse(const std::string& text);

  friend bool operator==(const DomainSpec&, const DomainSpec&) = default;
};

// ---------------------------------------------------------------- Q

class RationalField {
 public:
  using Elem = Rational;

  Elem zero() const { return 0; }
  Elem one() const { return 1; }
  Elem from_int(long v) const { return v; }
  Elem from_integer(const Integer& v) const { return Rational(v); }
  Elem from_rational(const Rational& v) const { return v; }

  Elem add(const Elem& a, const Elem& b) const { return a + b; }
  Elem sub(const Elem& a, const Elem& b) const { return a - b; }
  Elem mul(const Elem& a, const Elem& b) const { return a * b; }
  Elem neg(const Elem& a) const { return -a; }
  Elem inv(const Elem& a) const;
  bool is_zero(const Elem& a) const { return a == 0; }
  bool eq(const Elem& a, const Elem& b) const { return a == b; }
  void add_to(Elem& acc, const Elem& b) const { acc += b; }
  void mul_add(Elem& acc, const Elem& a, const Elem& b) const { acc += a * b; }

  std::uint64_t characteristic() const { return 0; }
  bool has_q() const { return false; }
  Elem q_power(long) const;

  std::string to_string(const Elem& a) const { return a.get_str(); }
  json to_json(const Elem& a) const { return a.get_str(); }
  DomainSpec spec() const { return DomainSpec::rational(); }
};

// ---------------------------------------------------------------- F_p

class PrimeField {
 public:
  using Elem = std::uint64_t;

  PrimeField() = default;
  explicit PrimeField(std::uint64_t p);

  std::uint64_t modulus() const { return p_; }
  Elem zero() const { return 0; }
  Elem one() const { return 1; }
  Elem from_int(long v) const;
  Elem from_integer(const Integer& v) const { return reduce_mod(v, p_); }
  /// Throws DenominatorVanishes when p divides the denominator.
  Elem from_rational(const Rational& v) const;

  Elem add(Elem a, Elem b) const { return add_mod(a, b, p_); }
  Elem sub(Elem a, Elem b) const { return sub_mod(a, b, p_); }
  Elem mul(Elem a, Elem b) const { return mul_mod(a, b, p_); }
  Elem neg(Elem a) const { return a == 0 ? 0 : p_ - a; }
  Elem inv(Elem a) const { return inv_mod(a, p_); }
  bool is_zero(Elem a) const { return a == 0; }
  bool eq(Elem a, Elem b) const { return a == b; }
  void add_to(Elem& acc, Elem b) const { acc = add_mod(acc, b, p_); }
  void mul_add(Elem& acc, Elem a, Elem b) const { acc = add_mod(acc, mul_mod(a, b, p_), p_); }

  std::uint64_t characteristic() const { return p_; }
  bool has_q() const { return false; }
  Elem q_power(long) const;

  std::string to_string(Elem a) const { return std::to_string(a); }
  json to_json(Elem a) const { return std::to_string(a); }
  DomainSpec spec() const { return DomainSpec::prime_field(p_); }

 private:
  std::uint64_t p_ = 2;
};

// ---------------------------------------------------------------- Q[q]/Phi_p

class CyclotomicField {
 public:
  /// Residue modulo Phi_p: coefficient i multiplies q^i, degree < deg Phi_p.
  using Elem = QPoly;

  CyclotomicField() = default;
  explicit CyclotomicField(std::uint64_t p);

  std::uint64_t order() const { return st_->p; }
  const ZPoly& modulus() const { return st_->phi; }

  Elem zero() const { return {}; }
  Elem one() const { return 1; }
  Elem from_int(long v) const { return v; }
  Elem from_integer(const Integer& v) const { return QPoly(ZPoly(std::vector<Integer>{v})); }
  Elem from_rational(const Rational& v) const { return QPoly(std::vector<Rational>{v}); }
  /// Reduce an arbitrary polynomial in q modulo Phi_p.
  Elem reduce(const QPoly& a) const;

  Elem add(const Elem& a, const Elem& b) const { return a + b; }
  Elem sub(const Elem& a, const Elem& b) const { return a - b; }
  Elem mul(const Elem& a, const Elem& b) const { return reduce(a * b); }
  Elem neg(const Elem& a) const { return -a; }
  Elem inv(const Elem& a) const;
  bool is_zero(const Elem& a) const { return a.is_zero(); }
  bool eq(const Elem& a, const Elem& b) const { return a == b; }
  void add_to(Elem& acc, const Elem& b) const { acc += b; }
  void mul_add(Elem& acc, const Elem& a, const Elem& b) const { acc += mul(a, b); }

  std::uint64_t characteristic() const { return 0; }
  bool has_q() const { return true; }
  /// q^k for any integer k, using q^p = 1.
  Elem q_power(long k) const;

  std::string to_string(const Elem& a) const;
  json to_json(const Elem& a) const;
  DomainSpec spec() const { return DomainSpec::cyclotomic(st_->p); }

 private:
  struct State {
    std::uint64_t p;
    ZPoly phi;
    QPoly phi_q;
  };
  std::shared_ptr<const State> st_;
};

// ---------------------------------------------------------------- Q(q)

/// Fraction num/den of integer polynomials in q. Canonical form: the two
/// parts share no common factor in Z[q] (integer content included) and the
/// leading coefficient of den is positive; zero is 0/1.
struct RatFunc {
  ZPoly num;
  ZPoly den = 1;

  RatFunc() = default;
  RatFunc(long c) : num(c) {}  // NOLINT
  RatFunc(ZPoly n, ZPoly d);   // normalizes
  explicit RatFunc(const ZPoly& n) : num(n) {}

  bool is_zero() const { return num.is_zero(); }
  friend bool operator==(const RatFunc& a, const RatFunc& b) { return a.num == b.num && a.den == b.den; }
  std::string to_string() const;
};

class FormalQField {
 public:
  using Elem = RatFunc;

  Elem zero() const { return {}; }
  Elem one() const { return 1; }
  Elem from_int(long v) const { return v; }
  Elem from_integer(const Integer& v) const { return RatFunc(ZPoly(std::vector<Integer>{v})); }
  Elem from_rational(const Rational& v) const;

  Elem add(const Elem& a, const Elem& b) const;
  Elem sub(const Elem& a, const Elem& b) const;
  Elem mul(const Elem& a, const Elem& b) const;
  Elem neg(const Elem& a) const;
  Elem inv(const Elem& a) const;
  bool is_zero(const Elem& a) const { return a.is_zero(); }
  bool eq(const Elem& a, const Elem& b) const { return a == b; }
  void add_to(Elem& acc, const Elem& b) const { acc = add(acc, b); }
  void mul_add(Elem& acc, const Elem& a, const Elem& b) const { acc = add(acc, mul(a, b)); }

  std::uint64_t characteristic() const { return 0; }
  bool has_q() const { return true; }
  Elem q_power(long k) const;

  std::string to_string(const Elem& a) const { return a.to_string(); }
  json to_json(const Elem& a) const;
  DomainSpec spec() const { return DomainSpec::formal_q(); }
};

using CoefficientDomain = std::variant<RationalField, PrimeField, CyclotomicField, FormalQField>;

/// Validates the DomainSpec and returns the corresponding field.
CoefficientDomain make_domain(const DomainSpec& spec);

/// Image of x under q -> primitive p-th root of unity, reduced modulo Phi_p.
/// Throws DenominatorVanishes when Phi_p divides the denominator.
QPoly specialize_q(const RatFunc& x, const CyclotomicField& target);

/// Parse a JSON scalar produced by to_json back into the field.
Rational rational_from_json(const json& j);

// ---- homomorphisms into a word-size prime field ----
//
// Used to pre-screen linear systems. Each map sends the field into F_l for a
// large prime l; nullopt means the element is outside the domain of the map.

struct ModularImage {
  std::uint64_t l = 0;      // prime modulus
  std::uint64_t q_img = 0;  // image of q (q-domains only)
};

/// A prime l near 2^61 with l = 1 mod `congruent_one_mod` (pass 1 for no constraint).
std::uint64_t select_prime(std::uint64_t congruent_one_mod, unsigned skip = 0);

ModularImage modular_image_for(const RationalField&, unsigned attempt);
ModularImage modular_image_for(const PrimeField& f, unsigned attempt);
ModularImage modular_image_for(const CyclotomicField& f, unsigned attempt);
ModularImage modular_image_for(const FormalQField&, unsigned attempt);

std::optional<std::uint64_t> map_mod(const RationalField&, const ModularImage& h, const Rational& a);
std::optional<std::uint64_t> map_mod(const PrimeField&, const ModularImage& h, std::uint64_t a);
std::optional<std::uint64_t> map_mod(const CyclotomicField&, const ModularImage& h, const QPoly& a);
std::optional<std::uint64_t> map_mod(const FormalQField&, const ModularImage& h, const RatFunc& a);

}  // namespace quasinv
