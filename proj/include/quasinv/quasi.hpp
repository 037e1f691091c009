#pragma once

// Graded pieces of the ring of m-quasi-invariants computed directly from the
// definition: the coefficients of a general homogeneous polynomial of degree
// d are constrained by the divisibility conditions for every transposition,
// and the solution space is read off as an exact nullspace.

#include <cstdint>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "quasinv/linalg.hpp"
#include "quasinv/parallel.hpp"
#include "quasinv/poly.hpp"

namespace quasinv {

template <class F>
struct GradedBasis {
  int n = 0;
  int m = 0;
  int d = 0;
  bool q_deformed = false;
  std::vector<MonoKey> columns;  // monomials of degree d, decreasing graded-lex
  std::vector<Poly<F>> basis;

  std::size_t dim() const { return basis.size(); }
};

struct HilbertData {
  int n = 0;
  int m = 0;
  int d_max = 0;
  bool q_deformed = false;
  std::string domain;
  std::vector<std::size_t> dims;                     // d = 0..d_max
  std::vector<std::pair<int, Integer>> numerator;    // nonzero (exponent, coefficient)
  std::vector<int> denominator_degrees;              // 1..n
  bool nonnegative = true;                           // every numerator coefficient >= 0
  bool palindromic = false;                          // coefficient e equals coefficient top-e
};

json to_json(const HilbertData& h);
/// Numerator of the truncated series times prod_{k=1}^{n} (1 - t^k), through degree d_max.
std::vector<std::pair<int, Integer>> numerator_from_dims(const std::vector<std::size_t>& dims, int n);
/// Coefficients of (numerator) / prod_{k=1}^{n} (1 - t^k) through degree d_max.
std::vector<Integer> series_from_numerator(const std::vector<std::pair<int, Integer>>& num, int n, int d_max);
bool is_palindromic(const std::vector<std::pair<int, Integer>>& num);

namespace detail {

inline void check_quasi_args(int n, int m, int d) {
  if (n < 2 || n > kMaxVars) throw RangeViolation("n must be in 2.." + std::to_string(kMaxVars));
  if (m < 0) throw RangeViolation("m must be non-negative");
  if (d < 0 || d > 255) throw RangeViolation("degree must be in 0..255");
}

}  // namespace detail

/// Columns (monomials of degree d) and constraint rows expressing that a
/// general degree-d polynomial is m-quasi-invariant.
template <class F>
std::pair<std::vector<MonoKey>, std::vector<SparseRow<F>>> quasi_system(const F& f, int n, int m, int d,
                                                                         bool q_deformed) {
  detail::check_quasi_args(n, m, d);
  std::vector<MonoKey> cols = mono::of_degree(n, d);
  std::unordered_map<MonoKey, std::uint32_t> index;
  index.reserve(cols.size() * 2);
  for (std::uint32_t c = 0; c < cols.size(); ++c) index.emplace(cols[c], c);

  std::vector<std::vector<typename F::Elem>> rem;
  if (q_deformed) rem = detail::power_remainders(f, q_divisor(f, m), d);
  std::vector<std::vector<typename F::Elem>> binom;  // binom[a][t] = C(a, t) in the field
  if (!q_deformed) {
    binom.assign(static_cast<std::size_t>(d + 1), {});
    for (int a = 0; a <= d; ++a) {
      for (int t = 0; t <= std::min(a, 2 * m); ++t) {
        binom[static_cast<std::size_t>(a)].push_back(
            f.from_integer(binomial(static_cast<unsigned long>(a), static_cast<unsigned long>(t))));
      }
    }
  }
  auto c_at = [&](int a, int t) -> typename F::Elem {
    const auto& b = binom[static_cast<std::size_t>(a)];
    return t < static_cast<int>(b.size()) ? b[static_cast<std::size_t>(t)] : f.zero();
  };

  std::vector<SparseRow<F>> rows;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const MonoKey mask = ~(mono::byte_mask(i) | mono::byte_mask(j));
      // one group per monomial in the other variables
      std::vector<MonoKey> rests;
      for (MonoKey k : cols) {
        if (mono::exponent(k, j) == 0) rests.push_back(k & mask);
      }
      for (MonoKey rest : rests) {
        int other = 0;
        for (int v = 0; v < n; ++v) other += mono::exponent(rest, v);
        const int s = d - other;
        auto col_of = [&](int a) { return index.at(mono::with_pair(rest, i, a, j, s - a)); };
        const int orders = q_deformed ? 2 * m + 1 : std::min(2 * m, s);
        for (int t = q_deformed ? 0 : 1; t <= orders - (q_deformed ? 1 : 0); ++t) {
          SparseRow<F> row;
          for (int a = 0; a <= s; ++a) {
            typename F::Elem e =
                q_deformed ? f.sub(rem[static_cast<std::size_t>(a)][static_cast<std::size_t>(t)],
                                   rem[static_cast<std::size_t>(s - a)][static_cast<std::size_t>(t)])
                           : f.sub(c_at(a, t), c_at(s - a, t));
            if (!f.is_zero(e)) row.emplace_back(col_of(a), std::move(e));
          }
          if (!row.empty()) {
            std::sort(row.begin(), row.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
            rows.push_back(std::move(row));
          }
        }
      }
    }
  }
  return {std::move(cols), std::move(rows)};
}

/// Exact basis of the degree-d piece, in reduced echelon form over the
/// graded-lex column order.
template <class F>
GradedBasis<F> quasi_basis(const F& f, int n, int m, int d, bool q_deformed) {
  require_nonmodular(f, n);
  if (q_deformed && !f.has_q()) throw InvalidDomain("q-deformed quasi-invariants need Cyclotomic or FormalQ");
  auto [cols, rows] = quasi_system(f, n, m, d, q_deformed);
  Nullspace<F> ns = nullspace(f, cols.size(), rows);
  GradedBasis<F> out;
  out.n = n;
  out.m = m;
  out.d = d;
  out.q_deformed = q_deformed;
  out.columns = cols;
  for (const auto& v : ns.basis) {
    std::vector<typename Poly<F>::Term> terms;
    for (std::size_t c = 0; c < v.size(); ++c) {
      if (!f.is_zero(v[c])) terms.emplace_back(cols[c], v[c]);
    }
    out.basis.push_back(Poly<F>::from_terms(f, n, std::move(terms)));
  }
  return out;
}

/// Dimension only.
template <class F>
std::size_t quasi_dimension(const F& f, int n, int m, int d, bool q_deformed) {
  require_nonmodular(f, n);
  if (q_deformed && !f.has_q()) throw InvalidDomain("q-deformed quasi-invariants need Cyclotomic or FormalQ");
  auto [cols, rows] = quasi_system(f, n, m, d, q_deformed);
  return nullspace(f, cols.size(), rows, false).free_cols.size();
}

template <class F>
HilbertData hilbert_data(const F& f, int n, int m, int d_max, bool q_deformed, unsigned threads = 0) {
  require_nonmodular(f, n);
  if (d_max < 0) d_max = n == 3 ? 6 * m + 4 : n * (n - 1) / 2 * (2 * m + 1) + n * (n + 1) / 2;
  HilbertData h;
  h.n = n;
  h.m = m;
  h.d_max = d_max;
  h.q_deformed = q_deformed;
  h.domain = f.spec().name();
  h.dims = parallel_map<std::size_t>(
      static_cast<std::size_t>(d_max + 1),
      [&](std::size_t d) { return quasi_dimension(f, n, m, static_cast<int>(d), q_deformed); }, threads);
  h.numerator = numerator_from_dims(h.dims, n);
  for (int k = 1; k <= n; ++k) h.denominator_degrees.push_back(k);
  for (const auto& [e, c] : h.numerator) h.nonnegative = h.nonnegative && c > 0;
  h.palindromic = is_palindromic(h.numerator);
  return h;
}

/// Projections of a basis onto one isotypic type, as coefficient vectors over `columns`.
template <class F>
std::vector<std::vector<typename F::Elem>> projected_vectors(const GradedBasis<F>& b, IsotypicLabel label,
                                                             const F& f) {
  std::unordered_map<MonoKey, std::size_t> index;
  for (std::size_t c = 0; c < b.columns.size(); ++c) index.emplace(b.columns[c], c);
  std::vector<std::vector<typename F::Elem>> out;
  for (const auto& p : b.basis) {
    Poly<F> img = isotypic_project(p, label);
    std::vector<typename F::Elem> v(b.columns.size(), f.zero());
    for (const auto& [k, c] : img.terms()) v[index.at(k)] = c;
    out.push_back(std::move(v));
  }
  return out;
}

template <class F>
std::size_t isotypic_dimension(const F& f, int n, int m, int d, IsotypicLabel label, bool q_deformed) {
  if (label == IsotypicLabel::Std && n != 3) throw InvalidArgument("the Std label is only available for n = 3");
  GradedBasis<F> b = quasi_basis(f, n, m, d, q_deformed);
  if (b.basis.empty()) return 0;
  return rank_of(f, projected_vectors(b, label, f), b.columns.size());
}

/// Least degree with a nonzero Std-isotypic piece (n = 3).
template <class F>
int std_generator_degree(const F& f, int m, bool q_deformed) {
  for (int e = 0; e <= 3 * m + 1; ++e) {
    if (isotypic_dimension(f, 3, m, e, IsotypicLabel::Std, q_deformed) > 0) {
      if (e < 2 * m + 1) {
        throw TheoremViolation("Std piece found in degree " + std::to_string(e) + " below 2m+1");
      }
      return e;
    }
  }
  throw TheoremViolation("no Std piece in degrees up to 3m+1 for m = " + std::to_string(m));
}

/// prod_{i<j} (x_i - x_j)^(2m+1), or prod_{i<j} prod_{k=-m}^{m} (x_i - q^k x_j)
/// multiplied by the unit q^(m(m+1)/2) per pair so that no negative powers occur.
template <class F>
Poly<F> sign_generator(const F& f, int n, int m, bool q_deformed) {
  require_nonmodular(f, n);
  if (q_deformed && !f.has_q()) throw InvalidDomain("q-deformed sign generator needs a domain with q");
  Poly<F> out = Poly<F>::constant(f, n, f.one());
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const Poly<F> xi = Poly<F>::variable(f, n, i), xj = Poly<F>::variable(f, n, j);
      if (!q_deformed) {
        out *= (xi - xj).pow(static_cast<unsigned>(2 * m + 1));
        continue;
      }
      for (int k = 0; k <= m; ++k) out *= xi - xj.scale(f.q_power(k));
      for (int k = 1; k <= m; ++k) out *= xi.scale(f.q_power(k)) - xj;
    }
  }
  if (!is_quasi_invariant(out, m, q_deformed)) throw MembershipFailure("sign generator fails the divisibility test");
  return out;
}

}  // namespace quasinv
