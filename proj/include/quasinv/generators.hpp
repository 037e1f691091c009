#pragma once

// Generators of the m-quasi-invariants in three variables.
//
// A_m = (x1 - x2)^(2m+1) K_m and B_m = (x1 - x2)^(2m+1) L_m, where K_m and
// L_m are binary forms in y1 = x1 - x3, y2 = x2 - x3, symmetric under
// y1 <-> y2, of degrees m and m + 1. The chain is built level by level and
// every level is small, so the forms are kept as dense coefficient vectors.

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "quasinv/coeffs.hpp"
#include "quasinv/integer.hpp"
#include "quasinv/poly.hpp"
#include "quasinv/quasi.hpp"

namespace quasinv {

/// sum_i c[i] y1^(deg - i) y2^i.
class BinaryForm {
 public:
  BinaryForm() = default;
  explicit BinaryForm(std::vector<Integer> c);  // degree = c.size() - 1
  static BinaryForm zero(int degree);

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  const std::vector<Integer>& coeffs() const { return c_; }
  bool is_zero() const;

  friend BinaryForm operator+(const BinaryForm& a, const BinaryForm& b);
  friend BinaryForm operator-(const BinaryForm& a, const BinaryForm& b);
  friend BinaryForm operator*(const BinaryForm& a, const BinaryForm& b);
  friend BinaryForm operator*(const BinaryForm& a, const Integer& s);
  friend bool operator==(const BinaryForm& a, const BinaryForm& b) = default;

  /// Value at y1 = y2 = 1.
  Integer at_diagonal() const;
  /// y1 <-> y2.
  BinaryForm swapped() const;
  /// (y1, y2) -> (y1 - y2, -y2), the transposition (2 3) in y coordinates.
  BinaryForm s23() const;
  /// Exact quotient by (y1 - y2)^2; throws DenominatorResidue otherwise.
  BinaryForm divide_by_diff_squared() const;
  /// Divisibility over Q by a form whose y2^deg coefficient is nonzero.
  bool divisible_by(const BinaryForm& g) const;
  Integer content() const;
  /// Primitive, with the first nonzero coefficient positive.
  BinaryForm normalized() const;

  /// The form as a polynomial in x1, x2, x3.
  template <class F>
  Poly<F> to_x(const F& f) const {
    const Poly<F> y1 = Poly<F>::variable(f, 3, 0) - Poly<F>::variable(f, 3, 2);
    const Poly<F> y2 = Poly<F>::variable(f, 3, 1) - Poly<F>::variable(f, 3, 2);
    Poly<F> out(f, 3);
    const int d = degree();
    std::vector<Poly<F>> p1(static_cast<std::size_t>(d + 1)), p2(static_cast<std::size_t>(d + 1));
    p1[0] = p2[0] = Poly<F>::constant(f, 3, f.one());
    for (int e = 1; e <= d; ++e) {
      p1[static_cast<std::size_t>(e)] = p1[static_cast<std::size_t>(e - 1)] * y1;
      p2[static_cast<std::size_t>(e)] = p2[static_cast<std::size_t>(e - 1)] * y2;
    }
    for (int i = 0; i <= d; ++i) {
      const auto& c = c_[static_cast<std::size_t>(i)];
      if (c == 0) continue;
      out += (p1[static_cast<std::size_t>(d - i)] * p2[static_cast<std::size_t>(i)]).scale(f.from_integer(c));
    }
    return out;
  }

  json to_json() const;
  static BinaryForm from_json(const json& j);
  std::string to_string() const;

 private:
  std::vector<Integer> c_;
};

/// P2 and P3 in the y coordinates.
BinaryForm p2_form();
BinaryForm p3_form();

struct GeneratorChain {
  int m = 0;
  BinaryForm K;
  BinaryForm L;
  Integer c;  // wedge scalar at level m

  /// (x1 - x2)^(2m+1) K and (x1 - x2)^(2m+1) L.
  template <class F>
  Poly<F> A(const F& f) const {
    return (Poly<F>::variable(f, 3, 0) - Poly<F>::variable(f, 3, 1)).pow(static_cast<unsigned>(2 * m + 1)) *
           K.to_x(f);
  }
  template <class F>
  Poly<F> B(const F& f) const {
    return (Poly<F>::variable(f, 3, 0) - Poly<F>::variable(f, 3, 1)).pow(static_cast<unsigned>(2 * m + 1)) *
           L.to_x(f);
  }

  /// Versioned checkpoint form.
  json to_json() const;
  /// Throws CheckpointCorrupt when the record is malformed or inconsistent.
  static GeneratorChain from_json(const json& j);
};

/// Level 0: K = 1, L = y1 + y2.
GeneratorChain initial_chain();

/// Level m + 1 from level m. Membership of A, B in Q_{m+1} is checked by the
/// divisibility test when m + 1 <= verify_up_to.
GeneratorChain lift_chain(const GeneratorChain& chain, int verify_up_to = 4);

/// c with K s23(L) - L s23(K) = c y2^(2m+1); throws NotProportional otherwise.
Integer wedge_scalar(const BinaryForm& K, const BinaryForm& L, int m);

/// A s23(B) - B s23(A) divided by the (q-)sign product, for polynomials in
/// x1, x2, x3. Throws NotProportional when the quotient is not a scalar.
template <class F>
typename F::Elem wedge_scalar(const Poly<F>& A, const Poly<F>& B, int m, bool q_deformed = false) {
  const F& f = A.field();
  Poly<F> w = A * swap_vars(B, 1, 2) - B * swap_vars(A, 1, 2);
  for (int i = 0; i < 3; ++i) {
    for (int j = i + 1; j < 3; ++j) {
      for (int k = -m; k <= m; ++k) {
        try {
          w = divide_by_linear_exact(w, i, j, q_deformed ? f.q_power(k) : f.one());
        } catch (const DenominatorResidue&) {
          throw NotProportional("wedge is not divisible by the sign product");
        }
      }
    }
  }
  if (w.is_zero()) throw NotProportional("wedge vanishes");
  if (w.size() != 1 || w.lead().first != MonoKey{0}) throw NotProportional("wedge quotient is not a scalar");
  return w.lead().second;
}

/// Checks of one level against the brute-force oracle: A and B lie in Q_m,
/// the orbit sums vanish, K and L are not divisible by P2 or P3, the Std
/// slice in degree 3m+1 is spanned by {A, sA} and the one in degree 3m+2 by
/// {B, sB, e1 A, e1 sA}.
struct ChainReport {
  int m = 0;
  bool membership = false;
  bool orbit_sum = false;
  bool not_divisible = false;
  bool span = false;
  bool ok() const { return membership && orbit_sum && not_divisible && span; }
};
ChainReport verify_chain(const GeneratorChain& chain);

/// Primes 3 < p <= prime_bound dividing c.
std::vector<std::uint64_t> differing_primes(const Integer& c, std::uint64_t prime_bound);

struct RenXuWitness {
  int n = 3;
  int m = 0;
  std::uint64_t p = 0;
  bool satisfied = false;
  std::vector<std::pair<int, int>> witnesses;  // (a, k)
};

/// Pairs a >= 1, k >= 0 with
///   (m n (n-2) + C(n,2)) / (n (n-2) k + C(n,2) - 1) <= p^a <= m n / (n k + 1),
/// compared after cross-multiplication.
RenXuWitness renxu_check(int n, int m, std::uint64_t p);

/// Primes 3 < p <= bound for which renxu_check(3, m, p) holds.
std::vector<std::uint64_t> renxu_primes(int m, std::uint64_t bound);

using Numerator = std::vector<std::pair<int, Integer>>;

/// Numerator of the Hilbert series of Q_m(3) over F_p predicted from the
/// witness with largest a; the characteristic-0 numerator when none exists.
Numerator predicted_charp_numerator(int m, std::uint64_t p);
/// 1 + 2t^(3m+1) + 2t^(3m+2) + t^(6m+3).
Numerator char0_numerator(int m);

json numerator_to_json(const Numerator& num);

}  // namespace quasinv
