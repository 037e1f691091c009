#pragma once

// q-deformed quasi-invariants in three variables: the wedge polynomial c(q)
// whose cyclotomic factors mark the roots of unity where the deformation
// stops being flat, the explicit low-degree elements P_{m,q} at those roots,
// and dimension comparisons against the undeformed ring.

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "quasinv/coeffs.hpp"
#include "quasinv/generators.hpp"
#include "quasinv/poly.hpp"
#include "quasinv/upoly.hpp"

namespace quasinv {

/// Clears denominators and the Z[q]-content of every coefficient; the result
/// has coefficients in Z[q] with gcd 1 and a positive leading coefficient.
Poly<FormalQField> integral_primitive(const Poly<FormalQField>& p);

/// s12-antisymmetric part of the Std-isotypic piece of Q_{m,q}(3) in degree d
/// over Q(q), as integral primitive polynomials in reduced echelon order.
std::vector<Poly<FormalQField>> q_std_antisymmetric(int m, int d);

struct QWedge {
  int m = 0;
  ZPoly c;                                                 // primitive, no q^l factor
  std::vector<std::pair<std::uint64_t, int>> cyclotomic;  // (d, multiplicity) with Phi_d | c
  ZPoly remainder;                                         // c divided by its cyclotomic part

  bool non_cyclotomic() const { return remainder.degree() > 0; }
  /// d >= 2 with Phi_d | c.
  std::vector<std::uint64_t> excluded() const;
  json to_json() const;
};

/// c(q) for n = 3: the wedge A s23(B) - B s23(A) of the degree 3m+1 and 3m+2
/// generators over Q(q), divided by prod_{i<j} prod_{k=-m}^{m} (x_i - q^k x_j).
/// B is saturated against e1 A by the gcd of the 2x2 minors, then units q^l
/// and the content are cleared.
QWedge q_wedge_polynomial(int m);

/// Phi_d factors of c with d <= deg c + 1; the cofactor is returned.
std::pair<std::vector<std::pair<std::uint64_t, int>>, ZPoly> cyclotomic_factors(const ZPoly& c);

/// Integer interval [ceil((m n (n-2) + C(n,2)) / (C(n,2) - 1)), m n]; empty
/// (lo > hi) when it is void and for n = 2.
std::pair<int, int> thm56_range(int n, int m);

enum class PmqCase { LargeP, OddSmallP, EvenSmallP };
std::string to_string(PmqCase c);

struct PmqElement {
  int n = 3;
  int m = 0;
  std::uint64_t p = 0;
  PmqCase kind = PmqCase::LargeP;
  Poly<CyclotomicField> poly;
  int degree = 0;
};

/// The case-dependent product with x1^p - x2^p over Q(zeta_p). Throws
/// RangeViolation outside the interval and MembershipFailure when the element
/// fails the q-divisibility test, its degree bound or non-symmetry.
PmqElement construct_pmq(int n, int m, std::uint64_t p);

struct QDeformationReport {
  int n = 3;
  int m = 0;
  std::uint64_t p = 0;
  int d_max = 0;
  std::pair<int, int> thm56 = {1, 0};
  std::vector<std::uint64_t> flat_values_excluded;
  std::optional<QWedge> wedge;  // n = 3 only
  std::vector<std::size_t> dims_expected;
  std::vector<std::size_t> dims_cyclotomic;
  std::vector<std::size_t> dims_formal;  // empty when not computed
  std::vector<std::size_t> dims_prime;   // PrimeField(p) for prime p > 3
  bool agreement = true;
  std::optional<int> first_difference;
  bool dominance = true;
  std::optional<PmqElement> pmq;  // when p lies in the range
  bool conjecture_holds = true;   // {d : Phi_d | c} equals the range

  json to_json() const;
};

/// Dimensions of Q_{m,zeta_p}(n) through d_max (default 6m+4 for n = 3 and
/// 2m+4 for n = 2) compared with the undeformed series, plus the dominance
/// chain Q(q) <= Q(zeta_p) <= F_p. For n = 3 the wedge polynomial is computed
/// and every p in the range must divide it; a missing one raises TheoremViolation.
QDeformationReport flatness_check(int n, int m, std::uint64_t p, int d_max = -1, bool with_formal = true,
                                  unsigned threads = 0);

/// P_{m,q} for n = 3, checked to be the least-degree Std element over Q(zeta_p).
/// Throws MinimalityFailure when a Std element exists in a lower degree.
Poly<CyclotomicField> minimal_qstd_generator(int m, std::uint64_t p);

}  // namespace quasinv
