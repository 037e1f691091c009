#pragma once

// Exact nullspaces of sparse linear systems over the coefficient fields.
//
// Characteristic-0 systems are first reduced modulo a word-size prime to pick
// a set of independent rows; the exact elimination then runs only on those
// rows and the resulting basis is checked against every original row. A
// failed check falls back to eliminating the full system.
//
// The returned basis is the canonical one: vector f has a 1 in free column f,
// zeros in the other free columns, and the columns are processed left to
// right. It depends only on the row space, not on the row selection.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <type_traits>
#include <utility>
#include <vector>

#include "quasinv/coeffs.hpp"

namespace quasinv {

template <class F>
using SparseRow = std::vector<std::pair<std::uint32_t, typename F::Elem>>;

template <class F>
struct Nullspace {
  std::size_t ncols = 0;
  std::size_t rank = 0;
  std::vector<std::size_t> free_cols;
  std::vector<std::vector<typename F::Elem>> basis;  // dense, one per free column
};

namespace detail {

// ---------------------------------------------------------------- modular RREF

/// Row-reduced echelon form over F_l, grown one row at a time.
class ModularEchelon {
 public:
  ModularEchelon(std::uint64_t l, std::size_t ncols) : l_(l), n_(ncols) {}

  /// Reduce and insert; returns true when the row was independent.
  bool insert(std::vector<std::uint64_t> v) {
    for (std::size_t b = 0; b < rows_.size(); ++b) {
      const std::uint64_t c = v[pivots_[b]];
      if (c == 0) continue;
      const auto& row = rows_[b];
      for (std::size_t j = pivots_[b]; j < n_; ++j) {
        if (row[j] != 0) v[j] = sub_mod(v[j], mul_mod(c, row[j], l_), l_);
      }
    }
    std::size_t pc = 0;
    while (pc < n_ && v[pc] == 0) ++pc;
    if (pc == n_) return false;
    const std::uint64_t inv = inv_mod(v[pc], l_);
    for (std::size_t j = pc; j < n_; ++j) v[j] = mul_mod(v[j], inv, l_);
    for (auto& row : rows_) {
      const std::uint64_t c = row[pc];
      if (c == 0) continue;
      for (std::size_t j = pc; j < n_; ++j) {
        if (v[j] != 0) row[j] = sub_mod(row[j], mul_mod(c, v[j], l_), l_);
      }
    }
    auto pos = std::lower_bound(pivots_.begin(), pivots_.end(), pc) - pivots_.begin();
    pivots_.insert(pivots_.begin() + pos, pc);
    rows_.insert(rows_.begin() + pos, std::move(v));
    return true;
  }

  std::size_t rank() const { return rows_.size(); }
  bool full() const { return rows_.size() == n_; }
  const std::vector<std::size_t>& pivots() const { return pivots_; }
  const std::vector<std::vector<std::uint64_t>>& rows() const { return rows_; }

 private:
  std::uint64_t l_;
  std::size_t n_;
  std::vector<std::size_t> pivots_;
  std::vector<std::vector<std::uint64_t>> rows_;
};

inline std::vector<std::size_t> free_columns(const std::vector<std::size_t>& pivots, std::size_t ncols) {
  std::vector<std::size_t> out;
  std::size_t k = 0;
  for (std::size_t c = 0; c < ncols; ++c) {
    if (k < pivots.size() && pivots[k] == c) ++k;
    else out.push_back(c);
  }
  return out;
}

// ---------------------------------------------------------------- fraction-free elimination

struct IntegerRing {
  using E = Integer;
  static bool is_zero(const E& a) { return a == 0; }
  /// a <- (piv * a - c * b) / prev
  static void step(E& a, const E& piv, const E& c, const E& b, const E& prev, E& tmp) {
    mpz_mul(tmp.get_mpz_t(), piv.get_mpz_t(), a.get_mpz_t());
    mpz_submul(tmp.get_mpz_t(), c.get_mpz_t(), b.get_mpz_t());
    mpz_divexact(a.get_mpz_t(), tmp.get_mpz_t(), prev.get_mpz_t());
  }
  static E one() { return 1; }
};

template <class R>
struct FractionFree {
  std::vector<std::vector<typename R::E>> rows;  // nonzero rows only, pivot entries all equal to det
  std::vector<std::size_t> pivots;
  typename R::E det;
};

/// Fraction-free Gauss-Jordan elimination. Dependent rows vanish and are dropped.
template <class R>
FractionFree<R> bareiss_jordan(std::vector<std::vector<typename R::E>> a, std::size_t ncols) {
  using E = typename R::E;
  FractionFree<R> out;
  E prev = R::one();
  E tmp;
  std::size_t k = 0;
  const std::size_t nrows = a.size();
  for (std::size_t pc = 0; pc < ncols && k < nrows; ++pc) {
    std::size_t sel = nrows;
    for (std::size_t i = k; i < nrows; ++i) {
      if (!R::is_zero(a[i][pc])) {
        sel = i;
        break;
      }
    }
    if (sel == nrows) continue;
    std::swap(a[k], a[sel]);
    const E piv = a[k][pc];
    const auto& prow = a[k];
    for (std::size_t i = 0; i < nrows; ++i) {
      if (i == k) continue;
      auto& row = a[i];
      const E c = row[pc];
      if (i > k && R::is_zero(c)) {
        // only a rescale by piv / prev
        for (std::size_t j = pc + 1; j < ncols; ++j) {
          if (!R::is_zero(row[j])) R::step(row[j], piv, c, prow[j], prev, tmp);
        }
        continue;
      }
      for (std::size_t j = 0; j < ncols; ++j) {
        if (j == pc) continue;
        if (R::is_zero(row[j]) && (R::is_zero(c) || R::is_zero(prow[j]))) continue;
        R::step(row[j], piv, c, prow[j], prev, tmp);
      }
      row[pc] = E();
    }
    out.pivots.push_back(pc);
    prev = piv;
    ++k;
  }
  // earlier pivot entries were rescaled along the way and now all equal prev
  a.resize(k);
  out.rows = std::move(a);
  out.det = prev;
  return out;
}

// ---------------------------------------------------------------- field Gauss-Jordan

template <class F>
struct FieldEchelon {
  std::vector<std::vector<typename F::Elem>> rows;
  std::vector<std::size_t> pivots;
};

template <class F>
FieldEchelon<F> gauss_jordan(const F& f, std::vector<std::vector<typename F::Elem>> a, std::size_t ncols) {
  FieldEchelon<F> out;
  std::size_t k = 0;
  const std::size_t nrows = a.size();
  for (std::size_t pc = 0; pc < ncols && k < nrows; ++pc) {
    std::size_t sel = nrows;
    for (std::size_t i = k; i < nrows; ++i) {
      if (!f.is_zero(a[i][pc])) {
        sel = i;
        break;
      }
    }
    if (sel == nrows) continue;
    std::swap(a[k], a[sel]);
    const auto inv = f.inv(a[k][pc]);
    for (std::size_t j = pc; j < ncols; ++j) {
      if (!f.is_zero(a[k][j])) a[k][j] = f.mul(a[k][j], inv);
    }
    for (std::size_t i = 0; i < nrows; ++i) {
      if (i == k || f.is_zero(a[i][pc])) continue;
      const auto c = a[i][pc];
      for (std::size_t j = pc; j < ncols; ++j) {
        if (!f.is_zero(a[k][j])) a[i][j] = f.sub(a[i][j], f.mul(c, a[k][j]));
      }
    }
    out.pivots.push_back(pc);
    ++k;
  }
  a.resize(k);
  out.rows = std::move(a);
  return out;
}

template <class F>
std::vector<std::vector<typename F::Elem>> densify(const F& f, const std::vector<SparseRow<F>>& rows,
                                                   const std::vector<std::size_t>& which, std::size_t ncols) {
  std::vector<std::vector<typename F::Elem>> out;
  out.reserve(which.size());
  for (std::size_t r : which) {
    std::vector<typename F::Elem> v(ncols, f.zero());
    for (const auto& [c, e] : rows[r]) v[c] = e;
    out.push_back(std::move(v));
  }
  return out;
}

/// Rows independent modulo the prime of h, chosen greedily in input order.
/// nullopt when some entry has no image.
template <class F>
std::optional<std::vector<std::size_t>> select_rows(const F& f, const ModularImage& h,
                                                    const std::vector<SparseRow<F>>& rows, std::size_t ncols) {
  ModularEchelon ech(h.l, ncols);
  std::vector<std::size_t> chosen;
  for (std::size_t r = 0; r < rows.size() && !ech.full(); ++r) {
    std::vector<std::uint64_t> v(ncols, 0);
    bool any = false;
    for (const auto& [c, e] : rows[r]) {
      auto img = map_mod(f, h, e);
      if (!img) return std::nullopt;
      v[c] = *img;
      any = any || *img != 0;
    }
    if (!any) continue;
    if (ech.insert(std::move(v))) chosen.push_back(r);
  }
  return chosen;
}

// ---- ring embeddings for the fraction-free path ----

inline std::vector<Integer> integer_row(const RationalField&, const std::vector<Rational>& row) {
  Integer l = 1;
  for (const auto& x : row) {
    if (x != 0) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.get_den_mpz_t());
  }
  std::vector<Integer> out(row.size());
  for (std::size_t j = 0; j < row.size(); ++j) {
    if (row[j] != 0) out[j] = row[j].get_num() * (l / row[j].get_den());
  }
  return out;
}

inline std::vector<ZPoly> integer_row(const FormalQField&, const std::vector<RatFunc>& row) {
  ZPoly l = 1;
  for (const auto& x : row) {
    if (x.is_zero() || x.den == ZPoly(1)) continue;
    ZPoly g = gcd(l, x.den);
    l = l * x.den.divide_exact(g);
  }
  std::vector<ZPoly> out(row.size());
  for (std::size_t j = 0; j < row.size(); ++j) {
    if (!row[j].is_zero()) out[j] = row[j].num * l.divide_exact(row[j].den);
  }
  return out;
}

inline Rational ring_ratio(const RationalField&, const Integer& a, const Integer& d) {
  Rational r(a, d);
  r.canonicalize();
  return r;
}

template <class F>
struct RingOf;
template <>
struct RingOf<RationalField> {
  using type = IntegerRing;
};

inline Integer ring_dot(const std::vector<std::pair<std::size_t, Integer>>& row, const std::vector<Integer>& v) {
  Integer acc = 0;
  for (const auto& [c, e] : row) mpz_addmul(acc.get_mpz_t(), e.get_mpz_t(), v[c].get_mpz_t());
  return acc;
}

/// Exact path over Q(q), in src/linalg.cpp. Returns nullopt when the
/// candidate basis from the selected rows fails the check against all rows.
std::optional<Nullspace<FormalQField>> solve_fraction_free(const FormalQField& f,
                                                           const std::vector<SparseRow<FormalQField>>& rows,
                                                           const std::vector<std::size_t>& which, std::size_t ncols,
                                                           bool want_basis);

/// Fraction-free path over Z. Returns nullopt when the candidate basis from
/// the selected rows fails the check against all rows.
template <class F>
std::optional<Nullspace<F>> solve_fraction_free(const F& f, const std::vector<SparseRow<F>>& rows,
                                                const std::vector<std::size_t>& which, std::size_t ncols,
                                                bool want_basis) {
  using R = typename RingOf<F>::type;
  using E = typename R::E;
  std::vector<std::vector<E>> mat;
  mat.reserve(which.size());
  for (auto& dense : densify(f, rows, which, ncols)) mat.push_back(integer_row(f, dense));
  FractionFree<R> ff = bareiss_jordan<R>(std::move(mat), ncols);

  Nullspace<F> ns;
  ns.ncols = ncols;
  ns.rank = ff.pivots.size();
  ns.free_cols = free_columns(ff.pivots, ncols);
  std::vector<std::vector<E>> ring_basis;
  for (std::size_t fc : ns.free_cols) {
    std::vector<E> v(ncols);
    v[fc] = ff.det;
    for (std::size_t i = 0; i < ff.pivots.size(); ++i) v[ff.pivots[i]] = E() - ff.rows[i][fc];
    ring_basis.push_back(std::move(v));
  }
  // check every original row against the candidate basis inside the ring
  for (const auto& row : rows) {
    std::vector<E> dense_row(ncols);
    std::vector<typename F::Elem> frow(ncols, f.zero());
    for (const auto& [c, e] : row) frow[c] = e;
    auto irow = integer_row(f, frow);
    std::vector<std::pair<std::size_t, E>> sparse;
    for (std::size_t j = 0; j < ncols; ++j) {
      if (!R::is_zero(irow[j])) sparse.emplace_back(j, std::move(irow[j]));
    }
    for (const auto& v : ring_basis) {
      if (!R::is_zero(ring_dot(sparse, v))) return std::nullopt;
    }
  }
  if (!want_basis) return ns;
  for (const auto& v : ring_basis) {
    std::vector<typename F::Elem> out(ncols, f.zero());
    for (std::size_t j = 0; j < ncols; ++j) {
      if (!R::is_zero(v[j])) out[j] = ring_ratio(f, v[j], ff.det);
    }
    ns.basis.push_back(std::move(out));
  }
  return ns;
}

template <class F>
Nullspace<F> basis_from_echelon(const F& f, const FieldEchelon<F>& ech, std::size_t ncols) {
  Nullspace<F> ns;
  ns.ncols = ncols;
  ns.rank = ech.pivots.size();
  ns.free_cols = free_columns(ech.pivots, ncols);
  for (std::size_t fc : ns.free_cols) {
    std::vector<typename F::Elem> v(ncols, f.zero());
    v[fc] = f.one();
    for (std::size_t i = 0; i < ech.pivots.size(); ++i) v[ech.pivots[i]] = f.neg(ech.rows[i][fc]);
    ns.basis.push_back(std::move(v));
  }
  return ns;
}

template <class F>
bool annihilates(const F& f, const std::vector<SparseRow<F>>& rows, const Nullspace<F>& ns) {
  for (const auto& row : rows) {
    for (const auto& v : ns.basis) {
      typename F::Elem acc = f.zero();
      for (const auto& [c, e] : row) {
        if (!f.is_zero(v[c])) f.mul_add(acc, e, v[c]);
      }
      if (!f.is_zero(acc)) return false;
    }
  }
  return true;
}

}  // namespace detail

/// Exact nullspace of the system `rows` in `ncols` unknowns. With
/// want_basis = false only the rank and free columns are filled in.
template <class F>
Nullspace<F> nullspace(const F& f, std::size_t ncols, const std::vector<SparseRow<F>>& rows,
                       bool want_basis = true) {
  if constexpr (std::is_same_v<F, PrimeField>) {
    detail::ModularEchelon ech(f.modulus(), ncols);
    for (const auto& row : rows) {
      if (ech.full()) break;
      if (row.empty()) continue;
      std::vector<std::uint64_t> v(ncols, 0);
      for (const auto& [c, e] : row) v[c] = e;
      ech.insert(std::move(v));
    }
    detail::FieldEchelon<F> fe{ech.rows(), ech.pivots()};
    return detail::basis_from_echelon(f, fe, ncols);
  } else {
    std::vector<std::size_t> all(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) all[i] = i;
    for (unsigned attempt = 0; attempt < 2; ++attempt) {
      auto chosen = detail::select_rows(f, modular_image_for(f, attempt), rows, ncols);
      if (!chosen) continue;
      if constexpr (std::is_same_v<F, CyclotomicField>) {
        auto ech = detail::gauss_jordan(f, detail::densify(f, rows, *chosen, ncols), ncols);
        auto ns = detail::basis_from_echelon(f, ech, ncols);
        if (detail::annihilates(f, rows, ns)) return ns;
      } else {
        auto ns = detail::solve_fraction_free(f, rows, *chosen, ncols, want_basis);
        if (ns) return *std::move(ns);
      }
    }
    if constexpr (std::is_same_v<F, CyclotomicField>) {
      auto ech = detail::gauss_jordan(f, detail::densify(f, rows, all, ncols), ncols);
      return detail::basis_from_echelon(f, ech, ncols);
    } else {
      auto ns = detail::solve_fraction_free(f, rows, all, ncols, want_basis);
      if (!ns) throw ConsistencyError("full elimination produced a basis that fails the system");
      return *std::move(ns);
    }
  }
}

/// Exact rank of a list of dense vectors.
template <class F>
std::size_t rank_of(const F& f, const std::vector<std::vector<typename F::Elem>>& vectors, std::size_t ncols) {
  std::vector<SparseRow<F>> rows;
  rows.reserve(vectors.size());
  for (const auto& v : vectors) {
    SparseRow<F> r;
    for (std::size_t j = 0; j < v.size(); ++j) {
      if (!f.is_zero(v[j])) r.emplace_back(static_cast<std::uint32_t>(j), v[j]);
    }
    rows.push_back(std::move(r));
  }
  return nullspace(f, ncols, rows, false).rank;
}

}  // namespace quasinv
