#pragma once

// The Opdam shift operator O_m in three variables as an explicit
// differential operator, a Dunkl-operator oracle for its action on
// symmetric polynomials, and the scalars relating O_{m+1} applied to
// P3 A_m, P3 B_m, P2 B_m, P2^2 A_m to the next generators.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "quasinv/generators.hpp"
#include "quasinv/poly.hpp"

namespace quasinv {

namespace detail {

inline void require_three(int n) {
  if (n != 3) throw InvalidArgument("the shift operator is implemented for n = 3 only");
}

/// d/dx_a - d/dx_b.
template <class F>
Poly<F> diff_derivative(const Poly<F>& p, int a, int b) {
  return derivative(p, a) - derivative(p, b);
}

/// Divide by (x1 - x2)(x2 - x3)(x3 - x1); DenominatorResidue when inexact.
template <class F>
Poly<F> divide_by_discriminant_root(const Poly<F>& p) {
  const F& f = p.field();
  Poly<F> q = divide_by_linear_exact(p, 0, 1, f.one());
  q = divide_by_linear_exact(q, 1, 2, f.one());
  return -divide_by_linear_exact(q, 0, 2, f.one());
}

}  // namespace detail

/// O_m P for a polynomial P in x1, x2, x3:
///
///   V (d1 - d2)(d1 - d3)(d2 - d3) + 6(1-2m)(1-3m)(2-3m)
///   + sum over cyclic (a, b, c) of
///       [(3m-2)(xa - xc)(xb - xc) + (1-2m)(xa - xb)^2] (da - db)^2
///     + [(16m^2 - 18m + 6)(xa - xb)
///        + 4m(m-1)((xb - xc)^2/(xc - xa) - (xa - xc)^2/(xc - xb))] (da - db)
///
/// with V = (x1 - x2)(x1 - x3)(x2 - x3). The rational part is summed over the
/// common denominator (x1 - x2)(x2 - x3)(x3 - x1) and divided exactly; a
/// remainder raises DenominatorResidue, which happens when P is not in Q_{m-1}.
template <class F>
Poly<F> opdam_apply(int m, const Poly<F>& P) {
  detail::require_three(P.nvars());
  if (m < 0) throw RangeViolation("m must be non-negative");
  const F& f = P.field();
  auto x = [&](int i) { return Poly<F>::variable(f, 3, i); };
  auto num = [&](long v) { return f.from_int(v); };
  const long M = m;

  const Poly<F> V = (x(0) - x(1)) * (x(0) - x(2)) * (x(1) - x(2));
  Poly<F> third = detail::diff_derivative(P, 1, 2);
  third = detail::diff_derivative(third, 0, 2);
  third = detail::diff_derivative(third, 0, 1);
  Poly<F> out = V * third + P.scale(num(6 * (1 - 2 * M) * (1 - 3 * M) * (2 - 3 * M)));

  const int cyc[3][3] = {{0, 1, 2}, {1, 2, 0}, {2, 0, 1}};
  Poly<F> rational(f, 3);
  for (const auto& t : cyc) {
    const int a = t[0], b = t[1], c = t[2];
    const Poly<F> d1 = detail::diff_derivative(P, a, b);
    if (d1.is_zero()) continue;
    const Poly<F> d2 = detail::diff_derivative(d1, a, b);
    const Poly<F> xab = x(a) - x(b), xac = x(a) - x(c), xbc = x(b) - x(c);
    out += ((xac * xbc).scale(num(3 * M - 2)) + (xab * xab).scale(num(1 - 2 * M))) * d2;
    out += xab.scale(num(16 * M * M - 18 * M + 6)) * d1;
    if (m == 0 || m == 1) continue;
    // (xb - xc)^2/(xc - xa) - (xa - xc)^2/(xc - xb), over the common denominator,
    // times (xb - xa) so that every cyclic term shares (x1 - x2)(x2 - x3)(x3 - x1)
    const Poly<F> numer = (xbc * xbc * (-xbc) - xac * xac * (-xac)) * (x(b) - x(a));
    rational += (numer * d1).scale(num(4 * M * (M - 1)));
  }
  if (!rational.is_zero()) out += detail::divide_by_discriminant_root(rational);
  return out;
}

/// Dunkl operator D_i(k) = d/dx_i - k sum_{j != i} (1 - s_ij) / (x_i - x_j).
template <class F>
Poly<F> dunkl(const Poly<F>& P, int i, const typename F::Elem& k) {
  const F& f = P.field();
  Poly<F> out = derivative(P, i);
  for (int j = 0; j < P.nvars(); ++j) {
    if (j == i) continue;
    const Poly<F> diff = P - swap_vars(P, i, j);
    if (diff.is_zero()) continue;
    out -= divide_by_linear_exact(diff, i, j, f.one()).scale(k);
  }
  return out;
}

/// prod_{i<j} (D_i(m) - D_j(m)) applied to V P. Agrees with opdam_apply on
/// symmetric P.
template <class F>
Poly<F> opdam_dunkl_oracle(int m, const Poly<F>& P) {
  detail::require_three(P.nvars());
  const F& f = P.field();
  const auto k = f.from_int(m);
  Poly<F> cur = vandermonde(f, 3) * P;
  for (int i = 0; i < 3; ++i) {
    for (int j = i + 1; j < 3; ++j) cur = dunkl(cur, i, k) - dunkl(cur, j, k);
  }
  return cur;
}

/// r with X = r Y; nullopt when X is not a scalar multiple of a nonzero Y.
template <class F>
std::optional<typename F::Elem> proportionality(const Poly<F>& X, const Poly<F>& Y) {
  const F& f = X.field();
  if (Y.is_zero()) return std::nullopt;
  if (X.is_zero()) return f.zero();
  const auto y = Y.coeff(X.lead().first);
  if (f.is_zero(y)) return std::nullopt;
  const auto r = f.mul(X.lead().second, f.inv(y));
  if (!(Y.scale(r) == X)) return std::nullopt;
  return r;
}

enum class ScalarKind { A, B, D, E };
std::string to_string(ScalarKind k);

/// O_{m+1} P3 A_m = a A_{m+1}, O_{m+1} P3 B_m = b B_{m+1},
/// O_{m+1} P2 B_m = d A_{m+1}, O_{m+1} P2^2 A_m = e B_{m+1}.
struct ScalarEntry {
  int m = 0;
  Rational a, b, d, e;
  const Rational& get(ScalarKind k) const;
};

/// Needs the chain at m and m + 1; throws NotProportional when an image is
/// not a multiple of the expected generator.
ScalarEntry scalar_chain(const GeneratorChain& cur, const GeneratorChain& next);

/// v_p(x); throws ZeroInput for x = 0.
int valuation_profile(const Rational& x, std::uint64_t p);

/// Residue classes for b: Stated uses m = 2, 2 floor(p^k/3) - 1 mod p^k.
/// Observed replaces the second class by 2 floor((p^k+1)/3) - 1, which is what
/// the computed b_m satisfy when p^k = 2 mod 3.
enum class CongruenceForm { Stated, Observed };

/// Number of k > 0 with p^k <= 3m + 3 meeting the congruence for `which`;
/// nullopt stands for an infinite count (a at m = 1, b at m = 2).
std::optional<int> congruence_predicate(int m, std::uint64_t p, ScalarKind which,
                                        CongruenceForm form = CongruenceForm::Stated);

struct RelationReport {
  int m = 0;
  // a b c_{m+1} = (m-1)(m-2)(3m+1)(3m+2) c_m up to 2, 3 and sign
  Rational lhs_ab, rhs_ab;
  bool ab_holds = false;
  // d e c_{m+1} = (3m+1)(3m+2) c_m up to 2, 3 and sign
  Rational lhs_de, rhs_de;
  bool de_holds = false;
};

RelationReport relation_check(const ScalarEntry& s, const Integer& c_m, const Integer& c_next);

/// v_p(a b) - v_p(d e) = v_p((m-1)(m-2)); vacuous when a b = 0.
bool valuation_consistency(const ScalarEntry& s, std::uint64_t p);

struct ValuationFinding {
  int m = 0;
  std::uint64_t p = 0;
  ScalarKind which = ScalarKind::A;
  std::optional<int> observed;   // nullopt: the scalar is zero
  std::optional<int> predicted;  // nullopt: infinite
};

struct ShiftReport {
  int m_max = 0;
  std::vector<std::uint64_t> primes;
  std::vector<ScalarEntry> scalars;
  std::vector<RelationReport> relations;
  std::vector<ValuationFinding> findings;           // stated congruences
  std::vector<ValuationFinding> observed_findings;  // with CongruenceForm::Observed
  bool consistency = true;

  bool relations_hold() const;
  bool valuations_hold() const { return findings.empty(); }
  json to_json() const;
};

/// Scalars, valuations and relations for m = 0..m_max; the chain is built
/// sequentially and the levels are then checked in parallel.
ShiftReport shift_verify(int m_max, const std::vector<std::uint64_t>& primes, unsigned threads = 0);

}  // namespace quasinv
