#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace quasinv {

using Integer = mpz_class;
using Rational = mpq_class;

// ---- word-size modular arithmetic (moduli below 2^63) ----

inline std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % p);
}
inline std::uint64_t add_mod(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
  std::uint64_t s = a + b;
  return s >= p ? s - p : s;
}
inline std::uint64_t sub_mod(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
  return a >= b ? a - b : a + p - b;
}
std::uint64_t pow_mod(std::uint64_t a, std::uint64_t e, std::uint64_t p);
/// Inverse of a modulo prime p; a must be nonzero mod p.
std::uint64_t inv_mod(std::uint64_t a, std::uint64_t p);
/// Reduce an arbitrary integer into [0, p).
std::uint64_t reduce_mod(const Integer& a, std::uint64_t p);
/// Reduce a rational into [0, p); nullopt when the denominator vanishes mod p.
std::optional<std::uint64_t> reduce_mod(const Rational& a, std::uint64_t p);

// ---- primes and factorization ----

/// Deterministic Miller-Rabin for 64-bit inputs.
bool is_prime(std::uint64_t n);
std::vector<std::uint64_t> primes_up_to(std::uint64_t bound);

/// p-adic valuation of a nonzero integer.
int valuation(const Integer& x, unsigned long p);
/// p-adic valuation of a nonzero rational (numerator minus denominator multiplicity).
int valuation(const Rational& x, unsigned long p);

struct Factorization {
  Integer sign = 1;                            // +1 or -1
  std::vector<std::pair<Integer, int>> primes;  // ascending
  Integer cofactor = 1;                        // unfactored remainder (> 1 when incomplete)
  bool complete() const { return cofactor == 1; }
};

/// Trial division by every prime up to `trial_bound`, then Pollard rho
/// (Brent variant) on the remaining cofactor with a bounded iteration budget.
/// Whatever cannot be split within the budget is left in `cofactor`.
Factorization factor_integer(const Integer& n, std::uint64_t trial_bound = 10000,
                             std::uint64_t rho_budget = 200000);

Integer binomial(unsigned long n, unsigned long k);
/// Floor and ceiling of a / b for b > 0.
Integer floor_div(const Integer& a, const Integer& b);
Integer ceil_div(const Integer& a, const Integer& b);

/// Remove every factor 2 and 3 and the sign.
Integer strip_2_3(const Integer& x);
Rational strip_2_3(const Rational& x);

}  // namespace quasinv
