#include "quasinv/integer.hpp"

#include <algorithm>
#include <stdexcept>

#include "quasinv/errors.hpp"

namespace quasinv {

std::uint64_t pow_mod(std::uint64_t a, std::uint64_t e, std::uint64_t p) {
  std::uint64_t r = 1 % p;
  a %= p;
  while (e != 0) {
    if (e & 1U) r = mul_mod(r, a, p);
    a = mul_mod(a, a, p);
    e >>= 1U;
  }
  return r;
}

std::uint64_t inv_mod(std::uint64_t a, std::uint64_t p) {
  a %= p;
  if (a == 0) throw ZeroInput("inverse of zero modulo " + std::to_string(p));
  // extended Euclid on signed 128-bit values
  __int128 t = 0, new_t = 1, r = p, new_r = a;
  while (new_r != 0) {
    __int128 q = r / new_r;
    __int128 tmp = t - q * new_t;
    t = new_t;
    new_t = tmp;
    tmp = r - q * new_r;
    r = new_r;
    new_r = tmp;
  }
  if (r != 1) throw ZeroInput("element not invertible modulo " + std::to_string(p));
  if (t < 0) t += p;
  return static_cast<std::uint64_t>(t);
}

std::uint64_t reduce_mod(const Integer& a, std::uint64_t p) {
  Integer r;
  Integer pp;
  mpz_import(pp.get_mpz_t(), 1, 1, sizeof(p), 0, 0, &p);
  mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), pp.get_mpz_t());
  std::uint64_t out = 0;
  mpz_export(&out, nullptr, 1, sizeof(out), 0, 0, r.get_mpz_t());
  return out;
}

std::optional<std::uint64_t> reduce_mod(const Rational& a, std::uint64_t p) {
  std::uint64_t den = reduce_mod(a.get_den(), p);
  if (den == 0) return std::nullopt;
  return mul_mod(reduce_mod(a.get_num(), p), inv_mod(den, p), p);
}

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t small : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    if (n % small == 0) return n == small;
  }
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1U) == 0) {
    d >>= 1U;
    ++s;
  }
  for (std::uint64_t a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    std::uint64_t x = pow_mod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int r = 1; r < s; ++r) {
      x = mul_mod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

std::vector<std::uint64_t> primes_up_to(std::uint64_t bound) {
  std::vector<std::uint64_t> out;
  if (bound < 2) return out;
  std::vector<bool> composite(bound + 1, false);
  for (std::uint64_t i = 2; i <= bound; ++i) {
    if (composite[i]) continue;
    out.push_back(i);
    for (std::uint64_t j = i * i; j <= bound; j += i) composite[j] = true;
  }
  return out;
}

int valuation(const Integer& x, unsigned long p) {
  if (x == 0) throw ZeroInput("valuation of zero");
  Integer r = x;
  return static_cast<int>(mpz_remove(r.get_mpz_t(), x.get_mpz_t(), Integer(p).get_mpz_t()));
}

int valuation(const Rational& x, unsigned long p) {
  if (x == 0) throw ZeroInput("valuation of zero");
  return valuation(Integer(x.get_num()), p) - valuation(Integer(x.get_den()), p);
}

namespace {

// Brent's cycle-finding variant of Pollard rho; returns a nontrivial factor or 0.
Integer pollard_rho(const Integer& n, std::uint64_t budget) {
  if (mpz_even_p(n.get_mpz_t())) return 2;
  for (unsigned long c = 1; c < 20; ++c) {
    Integer y = 2, x, ys, q = 1, g = 1;
    std::uint64_t r = 1, spent = 0;
    const std::uint64_t block = 128;
    auto f = [&](const Integer& v) {
      Integer t = v * v + c;
      mpz_mod(t.get_mpz_t(), t.get_mpz_t(), n.get_mpz_t());
      return t;
    };
    while (g == 1 && spent < budget) {
      x = y;
      for (std::uint64_t i = 0; i < r; ++i) y = f(y);
      std::uint64_t k = 0;
      while (k < r && g == 1) {
        ys = y;
        std::uint64_t lim = std::min(block, r - k);
        for (std::uint64_t i = 0; i < lim; ++i) {
          y = f(y);
          Integer diff = abs(x - y);
          q = q * diff;
          mpz_mod(q.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
        }
        mpz_gcd(g.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
        k += lim;
        spent += lim;
      }
      r *= 2;
    }
    if (g == n) {
      do {
        ys = f(ys);
        Integer diff = abs(x - ys);
        mpz_gcd(g.get_mpz_t(), diff.get_mpz_t(), n.get_mpz_t());
      } while (g == 1);
    }
    if (g != 1 && g != n) return g;
    if (spent >= budget) return 0;
  }
  return 0;
}

void split_rho(const Integer& n, std::uint64_t budget, std::vector<Integer>& primes,
               std::vector<Integer>& leftovers) {
  if (n == 1) return;
  if (mpz_probab_prime_p(n.get_mpz_t(), 40) != 0) {
    primes.push_back(n);
    return;
  }
  Integer d = pollard_rho(n, budget);
  if (d == 0) {
    leftovers.push_back(n);
    return;
  }
  split_rho(d, budget, primes, leftovers);
  split_rho(n / d, budget, primes, leftovers);
}

}  // namespace

Factorization factor_integer(const Integer& n, std::uint64_t trial_bound, std::uint64_t rho_budget) {
  if (n == 0) throw ZeroInput("factorization of zero");
  Factorization out;
  out.sign = n < 0 ? -1 : 1;
  Integer rest = abs(n);
  for (std::uint64_t p : primes_up_to(trial_bound)) {
    if (rest == 1) break;
    Integer pp(static_cast<unsigned long>(p));
    int e = static_cast<int>(mpz_remove(rest.get_mpz_t(), rest.get_mpz_t(), pp.get_mpz_t()));
    if (e > 0) out.primes.emplace_back(pp, e);
  }
  if (rest != 1) {
    std::vector<Integer> found, leftovers;
    split_rho(rest, rho_budget, found, leftovers);
    std::sort(found.begin(), found.end());
    for (const Integer& p : found) {
      if (!out.primes.empty() && out.primes.back().first == p) {
        ++out.primes.back().second;
      } else {
        out.primes.emplace_back(p, 1);
      }
    }
    std::sort(out.primes.begin(), out.primes.end());
    out.cofactor = 1;
    for (const Integer& l : leftovers) out.cofactor *= l;
  }
  return out;
}

Integer binomial(unsigned long n, unsigned long k) {
  Integer r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return r;
}

Integer floor_div(const Integer& a, const Integer& b) {
  Integer r;
  mpz_fdiv_q(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

Integer ceil_div(const Integer& a, const Integer& b) {
  Integer r;
  mpz_cdiv_q(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

Integer strip_2_3(const Integer& x) {
  Integer r = abs(x);
  if (r == 0) return r;
  mpz_remove(r.get_mpz_t(), r.get_mpz_t(), Integer(2).get_mpz_t());
  mpz_remove(r.get_mpz_t(), r.get_mpz_t(), Integer(3).get_mpz_t());
  return r;
}

Rational strip_2_3(const Rational& x) {
  Rational r(strip_2_3(Integer(x.get_num())), strip_2_3(Integer(x.get_den())));
  r.canonicalize();
  return r;
}

}  // namespace quasinv
