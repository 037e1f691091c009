#include "quasinv/linalg.hpp"

#include <random>

// Nullspaces over Q(q).
//
// The main path works modulo word-size primes: the selected rows are reduced
// to echelon form at many points q = x, each entry of the echelon form is
// recovered as a rational function in q by interpolation and a truncated
// Euclidean algorithm, and the coefficients are lifted to Q by the Chinese
// remainder theorem and rational reconstruction. The candidate is accepted
// only after an exact check against every row, so unlucky primes or points
// cost time but never correctness. Kronecker substitution over Z is the
// fallback.

namespace quasinv::detail {

namespace {

using ModVec = std::vector<std::uint64_t>;  // coefficient i of q^i, trimmed

void trim(ModVec& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

int deg(const ModVec& a) { return static_cast<int>(a.size()) - 1; }

ModVec mul(const ModVec& a, const ModVec& b, std::uint64_t l) {
  if (a.empty() || b.empty()) return {};
  ModVec out(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] = add_mod(out[i + j], mul_mod(a[i], b[j], l), l);
  }
  trim(out);
  return out;
}

ModVec sub(ModVec a, const ModVec& b, std::uint64_t l) {
  if (a.size() < b.size()) a.resize(b.size(), 0);
  for (std::size_t i = 0; i < b.size(); ++i) a[i] = sub_mod(a[i], b[i], l);
  trim(a);
  return a;
}

/// a = quo * b + rem with deg rem < deg b.
void divmod(ModVec a, const ModVec& b, ModVec& quo, ModVec& rem, std::uint64_t l) {
  quo.clear();
  if (a.size() < b.size()) {
    rem = std::move(a);
    return;
  }
  const std::uint64_t inv = inv_mod(b.back(), l);
  quo.assign(a.size() - b.size() + 1, 0);
  for (std::size_t k = a.size(); k-- >= b.size();) {
    const std::uint64_t c = mul_mod(a[k], inv, l);
    quo[k - (b.size() - 1)] = c;
    if (c == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) {
      std::uint64_t& t = a[k - (b.size() - 1) + j];
      t = sub_mod(t, mul_mod(c, b[j], l), l);
    }
  }
  a.resize(b.size() - 1);
  trim(a);
  trim(quo);
  rem = std::move(a);
}

std::uint64_t eval(const ModVec& a, std::uint64_t x, std::uint64_t l) {
  std::uint64_t acc = 0;
  for (auto it = a.rbegin(); it != a.rend(); ++it) acc = add_mod(mul_mod(acc, x, l), *it, l);
  return acc;
}

/// Interpolation data for a fixed set of N points.
struct PointSet {
  std::uint64_t l = 0;
  std::vector<std::uint64_t> xs;
  std::vector<std::vector<std::uint64_t>> inv_diff;  // inv_diff[j][k] = 1 / (x_k - x_{k-j})
  ModVec vanishing;                                  // prod (q - x_k)

  PointSet(std::uint64_t l_, std::vector<std::uint64_t> xs_) : l(l_), xs(std::move(xs_)) {
    const std::size_t n = xs.size();
    inv_diff.assign(n, {});
    for (std::size_t j = 1; j < n; ++j) {
      inv_diff[j].assign(n, 0);
      for (std::size_t k = j; k < n; ++k) inv_diff[j][k] = inv_mod(sub_mod(xs[k], xs[k - j], l), l);
    }
    vanishing = {1};
    for (std::uint64_t x : xs) vanishing = mul(vanishing, {l - x, 1}, l);
  }

  ModVec interpolate(std::vector<std::uint64_t> c) const {
    const std::size_t n = xs.size();
    for (std::size_t j = 1; j < n; ++j) {
      for (std::size_t k = n - 1; k >= j; --k) c[k] = mul_mod(sub_mod(c[k], c[k - 1], l), inv_diff[j][k], l);
    }
    ModVec p{c[n - 1]};
    for (std::size_t k = n - 1; k-- > 0;) {
      // p <- p * (q - x_k) + c_k
      ModVec next(p.size() + 1, 0);
      for (std::size_t i = 0; i < p.size(); ++i) {
        next[i + 1] = add_mod(next[i + 1], p[i], l);
        next[i] = sub_mod(next[i], mul_mod(p[i], xs[k], l), l);
      }
      next[0] = add_mod(next[0], c[k], l);
      p = std::move(next);
    }
    trim(p);
    return p;
  }

  /// num/den with den monic and deg num + deg den small enough to leave a
  /// few points of slack; nullopt when no such fraction fits the values.
  std::optional<std::pair<ModVec, ModVec>> reconstruct(const std::vector<std::uint64_t>& values) const {
    const int n = static_cast<int>(xs.size());
    ModVec r0 = vanishing, r1 = interpolate(values);
    ModVec t0, t1{1};
    while (deg(r1) >= n / 2) {
      ModVec quo, rem;
      divmod(r0, r1, quo, rem, l);
      ModVec t2 = sub(t0, mul(quo, t1, l), l);
      r0 = std::move(r1);
      r1 = std::move(rem);
      t0 = std::move(t1);
      t1 = std::move(t2);
    }
    if (t1.empty() || deg(r1) + deg(t1) > n - 4) return std::nullopt;
    const std::uint64_t inv = inv_mod(t1.back(), l);
    for (auto& c : r1) c = mul_mod(c, inv, l);
    for (auto& c : t1) c = mul_mod(c, inv, l);
    return std::make_pair(std::move(r1), std::move(t1));
  }
};

/// Pivot list a is the generic one relative to b: larger rank, or equal rank
/// and lexicographically earlier pivots.
bool better_pivots(const std::vector<std::size_t>& a, const std::vector<std::size_t>& b) {
  if (a.size() != b.size()) return a.size() > b.size();
  return a < b;
}

struct ModImageResult {
  std::vector<std::size_t> pivots;
  std::vector<std::size_t> free_cols;
  std::vector<std::pair<ModVec, ModVec>> entries;  // row-major, rank x free
};

/// Echelon form of the selected rows over F_l(q).
std::optional<ModImageResult> image_mod(const FormalQField& f, const std::vector<SparseRow<FormalQField>>& rows,
                                        const std::vector<std::size_t>& which, std::size_t ncols,
                                        std::uint64_t l) {
  std::mt19937_64 gen(l);
  std::vector<std::uint64_t> xs;
  std::vector<std::vector<std::uint64_t>> vals;  // per point, flattened echelon entries
  std::vector<std::size_t> best;
  bool have = false;
  constexpr std::size_t kChecks = 4;
  constexpr std::size_t kMaxPoints = 2048;
  std::size_t n = 16;

  auto sample = [&]() {
    const std::uint64_t x = 2 + gen() % (l - 3);
    if (std::find(xs.begin(), xs.end(), x) != xs.end()) return;
    const ModularImage h{l, x};
    ModularEchelon ech(l, ncols);
    for (std::size_t r : which) {
      std::vector<std::uint64_t> v(ncols, 0);
      for (const auto& [c, e] : rows[r]) {
        auto img = map_mod(f, h, e);
        if (!img) return;
        v[c] = *img;
      }
      ech.insert(std::move(v));
    }
    if (have && ech.pivots() != best) {
      if (!better_pivots(ech.pivots(), best)) return;
      xs.clear();
      vals.clear();
    }
    best = ech.pivots();
    have = true;
    const auto fc = free_columns(best, ncols);
    std::vector<std::uint64_t> flat;
    flat.reserve(best.size() * fc.size());
    for (const auto& row : ech.rows()) {
      for (std::size_t c : fc) flat.push_back(row[c]);
    }
    xs.push_back(x);
    vals.push_back(std::move(flat));
  };

  while (n <= kMaxPoints) {
    std::size_t guard = 0;
    while (xs.size() < n + kChecks && guard++ < 8 * (n + kChecks)) sample();
    if (xs.size() < n + kChecks) return std::nullopt;
    ModImageResult out;
    out.pivots = best;
    out.free_cols = free_columns(best, ncols);
    const std::size_t count = vals.front().size();
    const PointSet ps(l, std::vector<std::uint64_t>(xs.begin(), xs.begin() + static_cast<long>(n)));
    bool ok = true;
    std::vector<std::uint64_t> column(n);
    for (std::size_t e = 0; e < count && ok; ++e) {
      for (std::size_t k = 0; k < n; ++k) column[k] = vals[k][e];
      auto frac = ps.reconstruct(column);
      if (!frac) {
        ok = false;
        break;
      }
      for (std::size_t k = n; k < n + kChecks; ++k) {
        const std::uint64_t dv = eval(frac->second, xs[k], l);
        if (dv == 0 || mul_mod(vals[k][e], dv, l) != eval(frac->first, xs[k], l)) {
          ok = false;
          break;
        }
      }
      out.entries.push_back(*std::move(frac));
    }
    if (ok) return out;
    n *= 2;
  }
  return std::nullopt;
}

/// a/b with a = u mod M and |a|, |b| <= sqrt(M/2).
std::optional<Rational> rational_reconstruct(const Integer& u, const Integer& M) {
  Integer bound;
  Integer half = M / 2;
  mpz_sqrt(bound.get_mpz_t(), half.get_mpz_t());
  Integer r0 = M, r1 = u % M, t0 = 0, t1 = 1;
  if (r1 < 0) r1 += M;
  while (r1 > bound) {
    Integer qt = r0 / r1;
    Integer r2 = r0 - qt * r1;
    Integer t2 = t0 - qt * t1;
    r0 = std::move(r1);
    r1 = std::move(r2);
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  if (t1 == 0 || abs(t1) > bound) return std::nullopt;
  Integer g;
  mpz_gcd(g.get_mpz_t(), r1.get_mpz_t(), t1.get_mpz_t());
  if (g != 1) return std::nullopt;
  Rational out(r1, t1);
  out.canonicalize();
  return out;
}

std::optional<ZPoly> lift_poly(const std::vector<Integer>& residues, const Integer& M, Integer& scale) {
  std::vector<Rational> c;
  c.reserve(residues.size());
  Integer l = 1;
  for (const auto& u : residues) {
    auto r = rational_reconstruct(u, M);
    if (!r) return std::nullopt;
    mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), r->get_den_mpz_t());
    c.push_back(*std::move(r));
  }
  std::vector<Integer> z;
  z.reserve(c.size());
  for (const auto& r : c) z.push_back(r.get_num() * (l / r.get_den()));
  scale = l;
  return ZPoly(std::move(z));
}

/// Rows cleared of denominators, kept sparse, plus the largest row 1-norm.
struct IntegerSystem {
  std::vector<std::vector<std::pair<std::size_t, ZPoly>>> rows;
  Integer rmax = 1;
};

IntegerSystem integer_system(const FormalQField& f, const std::vector<SparseRow<FormalQField>>& rows,
                             std::size_t ncols) {
  IntegerSystem out;
  for (const auto& row : rows) {
    std::vector<RatFunc> dense(ncols, f.zero());
    for (const auto& [c, e] : row) dense[c] = e;
    auto irow = integer_row(f, dense);
    std::vector<std::pair<std::size_t, ZPoly>> sp;
    Integer s = 0;
    for (std::size_t j = 0; j < ncols; ++j) {
      if (irow[j].is_zero()) continue;
      s += irow[j].norm_1();
      sp.emplace_back(j, std::move(irow[j]));
    }
    if (s > out.rmax) out.rmax = s;
    out.rows.push_back(std::move(sp));
  }
  return out;
}

/// Exact test that every vector annihilates every row, by substitution at a
/// power of two large enough that a vanishing value forces a vanishing
/// polynomial.
bool annihilates_exact(const IntegerSystem& sys, const std::vector<std::vector<ZPoly>>& vectors) {
  Integer vmax = 1;
  for (const auto& v : vectors) {
    for (const auto& e : v) {
      if (e.norm_inf() > vmax) vmax = e.norm_inf();
    }
  }
  const Integer prod = vmax * sys.rmax;
  const unsigned long k = mpz_sizeinbase(prod.get_mpz_t(), 2) + 2;
  std::vector<std::vector<Integer>> vals;
  for (const auto& v : vectors) {
    std::vector<Integer> w(v.size());
    for (std::size_t j = 0; j < v.size(); ++j) {
      if (!v[j].is_zero()) w[j] = v[j].eval_pow2(k);
    }
    vals.push_back(std::move(w));
  }
  for (const auto& sp : sys.rows) {
    std::vector<std::pair<std::size_t, Integer>> iv;
    for (const auto& [j, e] : sp) iv.emplace_back(j, e.eval_pow2(k));
    for (const auto& w : vals) {
      if (ring_dot(iv, w) != 0) return false;
    }
  }
  return true;
}

std::vector<ZPoly> clear_denominators(const std::vector<RatFunc>& v) {
  ZPoly l = 1;
  for (const auto& e : v) {
    if (e.is_zero() || e.den == ZPoly(1)) continue;
    l = l * e.den.divide_exact(gcd(l, e.den));
  }
  std::vector<ZPoly> out(v.size());
  for (std::size_t j = 0; j < v.size(); ++j) {
    if (!v[j].is_zero()) out[j] = v[j].num * l.divide_exact(v[j].den);
  }
  return out;
}

std::optional<Nullspace<FormalQField>> solve_modular(const FormalQField& f,
                                                     const std::vector<SparseRow<FormalQField>>& rows,
                                                     const std::vector<std::size_t>& which, std::size_t ncols,
                                                     bool want_basis, const IntegerSystem& sys) {
  constexpr unsigned kMaxPrimes = 8;
  std::optional<ModImageResult> ref;
  std::vector<std::pair<std::vector<Integer>, std::vector<Integer>>> acc;  // CRT residues per entry
  Integer modulus = 1;

  auto shape_degree = [](const ModImageResult& im) {
    long s = 0;
    for (const auto& [a, b] : im.entries) s += deg(a) + deg(b);
    return s;
  };

  for (unsigned attempt = 0; attempt < kMaxPrimes; ++attempt) {
    const std::uint64_t l = select_prime(1, attempt);
    auto im = image_mod(f, rows, which, ncols, l);
    if (!im) continue;
    bool reset = !ref;
    if (ref) {
      bool same = im->pivots == ref->pivots;
      for (std::size_t e = 0; same && e < im->entries.size(); ++e) {
        same = deg(im->entries[e].first) == deg(ref->entries[e].first) &&
               deg(im->entries[e].second) == deg(ref->entries[e].second);
      }
      if (!same) {
        if (im->pivots != ref->pivots ? !better_pivots(im->pivots, ref->pivots)
                                      : shape_degree(*im) <= shape_degree(*ref)) {
          continue;
        }
        reset = true;
      }
    }
    const Integer lz(static_cast<unsigned long>(l));
    if (reset) {
      ref = im;
      modulus = 1;
      acc.assign(im->entries.size(), {});
      for (std::size_t e = 0; e < im->entries.size(); ++e) {
        acc[e].first.assign(im->entries[e].first.size(), 0);
        acc[e].second.assign(im->entries[e].second.size(), 0);
      }
    }
    // CRT: x = a mod M, x = b mod l  ->  x = a + M * ((b - a) / M mod l)
    const std::uint64_t minv = inv_mod(reduce_mod(modulus, l), l);
    auto combine = [&](std::vector<Integer>& a, const ModVec& b) {
      for (std::size_t i = 0; i < a.size(); ++i) {
        const std::uint64_t t = mul_mod(sub_mod(b[i], reduce_mod(a[i], l), l), minv, l);
        a[i] += modulus * Integer(static_cast<unsigned long>(t));
      }
    };
    for (std::size_t e = 0; e < im->entries.size(); ++e) {
      combine(acc[e].first, im->entries[e].first);
      combine(acc[e].second, im->entries[e].second);
    }
    modulus *= lz;

    // rational reconstruction, then the exact check
    const std::size_t nfree = ref->free_cols.size();
    std::vector<std::vector<RatFunc>> basis(nfree, std::vector<RatFunc>(ncols, f.zero()));
    bool ok = true;
    for (std::size_t i = 0; i < ref->pivots.size() && ok; ++i) {
      for (std::size_t k = 0; k < nfree && ok; ++k) {
        const auto& [num_res, den_res] = acc[i * nfree + k];
        if (num_res.empty()) continue;
        Integer sn, sd;
        auto num = lift_poly(num_res, modulus, sn);
        auto den = lift_poly(den_res, modulus, sd);
        if (!num || !den) {
          ok = false;
          break;
        }
        basis[k][ref->pivots[i]] = RatFunc(-(*num * sd), *den * sn);
      }
    }
    if (!ok) continue;
    for (std::size_t k = 0; k < nfree; ++k) basis[k][ref->free_cols[k]] = f.one();
    std::vector<std::vector<ZPoly>> ring;
    ring.reserve(nfree);
    for (const auto& v : basis) ring.push_back(clear_denominators(v));
    if (!annihilates_exact(sys, ring)) continue;
    Nullspace<FormalQField> ns;
    ns.ncols = ncols;
    ns.rank = ref->pivots.size();
    ns.free_cols = ref->free_cols;
    if (want_basis) ns.basis = std::move(basis);
    return ns;
  }
  return std::nullopt;
}

/// Kronecker substitution: the selected rows are evaluated at q = 2^K,
/// eliminated over Z, and the minors read back as balanced base-2^K digits.
/// K starts small and doubles up to the bound on the coefficients of every
/// minor, where the read-back is guaranteed.
std::optional<Nullspace<FormalQField>> solve_kronecker(const FormalQField& f,
                                                       const std::vector<SparseRow<FormalQField>>& rows,
                                                       const std::vector<std::size_t>& which, std::size_t ncols,
                                                       bool want_basis, const IntegerSystem& sys) {
  std::vector<std::vector<ZPoly>> prow;
  for (auto& dense : densify(f, rows, which, ncols)) prow.push_back(integer_row(f, dense));
  // |coefficient of any minor| <= product over rows of the row 1-norm
  unsigned long bound = 2;
  for (const auto& r : prow) {
    Integer s = 0;
    for (const auto& e : r) s += e.norm_1();
    if (s > 0) bound += mpz_sizeinbase(s.get_mpz_t(), 2);
  }

  auto attempt = [&](unsigned long k) -> std::optional<Nullspace<FormalQField>> {
    std::vector<std::vector<Integer>> mat;
    mat.reserve(prow.size());
    for (const auto& r : prow) {
      std::vector<Integer> v(ncols);
      for (std::size_t j = 0; j < ncols; ++j) {
        if (!r[j].is_zero()) v[j] = r[j].eval_pow2(k);
      }
      mat.push_back(std::move(v));
    }
    FractionFree<IntegerRing> ff = bareiss_jordan<IntegerRing>(std::move(mat), ncols);
    Integer base = 1;
    mpz_mul_2exp(base.get_mpz_t(), base.get_mpz_t(), k);

    Nullspace<FormalQField> ns;
    ns.ncols = ncols;
    ns.rank = ff.pivots.size();
    ns.free_cols = free_columns(ff.pivots, ncols);
    const ZPoly det = ff.pivots.empty() ? ZPoly(1) : ZPoly::from_balanced_digits(ff.det, base);
    std::vector<std::vector<ZPoly>> ring;
    for (std::size_t fc : ns.free_cols) {
      std::vector<ZPoly> v(ncols);
      v[fc] = det;
      for (std::size_t i = 0; i < ff.pivots.size(); ++i) {
        v[ff.pivots[i]] = -ZPoly::from_balanced_digits(ff.rows[i][fc], base);
      }
      ring.push_back(std::move(v));
    }
    if (!annihilates_exact(sys, ring)) return std::nullopt;
    if (want_basis) {
      for (const auto& v : ring) {
        std::vector<RatFunc> out(ncols, f.zero());
        for (std::size_t j = 0; j < ncols; ++j) {
          if (!v[j].is_zero()) out[j] = RatFunc(v[j], det);
        }
        ns.basis.push_back(std::move(out));
      }
    }
    return ns;
  };

  for (unsigned long k = 64; k < bound; k *= 2) {
    if (auto ns = attempt(k)) return ns;
  }
  return attempt(bound);
}

}  // namespace

// A candidate that passes the exact check is the canonical basis: it is in
// echelon form read from the right, so its free columns are those of every
// such basis of the kernel.
std::optional<Nullspace<FormalQField>> solve_fraction_free(const FormalQField& f,
                                                           const std::vector<SparseRow<FormalQField>>& rows,
                                                           const std::vector<std::size_t>& which, std::size_t ncols,
                                                           bool want_basis) {
  const IntegerSystem sys = integer_system(f, rows, ncols);
  if (auto ns = solve_modular(f, rows, which, ncols, want_basis, sys)) return ns;
  return solve_kronecker(f, rows, which, ncols, want_basis, sys);
}

}  // namespace quasinv::detail
