#pragma once

// Sparse multivariate polynomials over an exact field.
//
// A monomial in at most seven variables is packed into a 64-bit key: the top
// byte holds the total degree, the next bytes the exponents of x1, x2, ...
// Comparing keys as integers is then graded-lex order with x1 > x2 > ...
// Terms are stored in decreasing key order, so terms().front() is the
// leading term.

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "quasinv/coeffs.hpp"

namespace quasinv {

constexpr int kMaxVars = 7;
using MonoKey = std::uint64_t;

namespace mono {

inline int shift_of(int i) { return 8 * (6 - i); }
inline int exponent(MonoKey k, int i) { return static_cast<int>((k >> shift_of(i)) & 0xFFU); }
inline int degree(MonoKey k) { return static_cast<int>(k >> 56); }
inline MonoKey byte_mask(int i) { return MonoKey{0xFF} << shift_of(i); }

MonoKey make(const std::vector<int>& exps);
std::vector<int> exponents(MonoKey k, int n);
inline MonoKey var(int i) { return (MonoKey{1} << 56) | (MonoKey{1} << shift_of(i)); }
/// Product of monomials; throws RangeViolation when the degree exceeds 255.
MonoKey mul(MonoKey a, MonoKey b);
/// Monomials of degree d in n variables, in decreasing graded-lex order.
std::vector<MonoKey> of_degree(int n, int d);
/// Replace the exponents of variables i and j by (ei, ej).
inline MonoKey with_pair(MonoKey k, int i, int ej_i, int j, int ej_j) {
  MonoKey r = k & ~(byte_mask(i) | byte_mask(j));
  return r | (MonoKey(ej_i) << shift_of(i)) | (MonoKey(ej_j) << shift_of(j));
}

}  // namespace mono

enum class IsotypicLabel { Triv, Sign, Std };
std::string to_string(IsotypicLabel l);
IsotypicLabel parse_isotypic(const std::string& s);

/// Permutations of {0..n-1} in lexicographic order, with signs.
std::vector<std::vector<int>> all_permutations(int n);
int permutation_sign(const std::vector<int>& perm);

template <class F>
class Poly {
 public:
  using Elem = typename F::Elem;
  using Term = std::pair<MonoKey, Elem>;

  Poly() = default;
  Poly(F field, int n) : f_(std::move(field)), n_(n) {
    if (n < 1 || n > kMaxVars) throw RangeViolation("variable count must be in 1.." + std::to_string(kMaxVars));
  }

  /// Combines duplicate monomials and drops zeros.
  static Poly from_terms(F field, int n, std::vector<Term> terms) {
    Poly p(std::move(field), n);
    std::sort(terms.begin(), terms.end(), [](const Term& a, const Term& b) { return a.first > b.first; });
    for (auto& t : terms) {
      if (!p.t_.empty() && p.t_.back().first == t.first) {
        p.f_.add_to(p.t_.back().second, t.second);
      } else {
        p.t_.push_back(std::move(t));
      }
    }
    p.drop_zeros();
    return p;
  }
  static Poly constant(F field, int n, const Elem& c) {
    Poly p(std::move(field), n);
    if (!p.f_.is_zero(c)) p.t_.emplace_back(MonoKey{0}, c);
    return p;
  }
  static Poly variable(F field, int n, int i) {
    Poly p(std::move(field), n);
    p.t_.emplace_back(mono::var(i), p.f_.one());
    return p;
  }
  static Poly monomial(F field, int n, MonoKey k, const Elem& c) {
    Poly p(std::move(field), n);
    if (!p.f_.is_zero(c)) p.t_.emplace_back(k, c);
    return p;
  }

  const F& field() const { return f_; }
  int nvars() const { return n_; }
  const std::vector<Term>& terms() const { return t_; }
  bool is_zero() const { return t_.empty(); }
  std::size_t size() const { return t_.size(); }
  int total_degree() const { return t_.empty() ? -1 : mono::degree(t_.front().first); }
  /// Common degree of all terms; nullopt when inhomogeneous or zero.
  std::optional<int> homogeneous_degree() const {
    if (t_.empty()) return std::nullopt;
    int d = mono::degree(t_.front().first);
    if (mono::degree(t_.back().first) != d) return std::nullopt;
    return d;
  }
  Elem coeff(MonoKey k) const {
    auto it = std::lower_bound(t_.begin(), t_.end(), k, [](const Term& t, MonoKey key) { return t.first > key; });
    if (it != t_.end() && it->first == k) return it->second;
    return f_.zero();
  }
  const Term& lead() const { return t_.front(); }

  Poly operator-() const {
    Poly r = *this;
    for (auto& t : r.t_) t.second = f_.neg(t.second);
    return r;
  }
  friend Poly operator+(const Poly& a, const Poly& b) { return merge(a, b, false); }
  friend Poly operator-(const Poly& a, const Poly& b) { return merge(a, b, true); }
  Poly& operator+=(const Poly& b) { return *this = merge(*this, b, false); }
  Poly& operator-=(const Poly& b) { return *this = merge(*this, b, true); }

  friend Poly operator*(const Poly& a, const Poly& b) {
    a.check_compatible(b);
    Poly r(a.f_, a.n_);
    if (a.is_zero() || b.is_zero()) return r;
    if (b.t_.size() == 1) return a.times_term(b.t_[0].first, b.t_[0].second);
    if (a.t_.size() == 1) return b.times_term(a.t_[0].first, a.t_[0].second);
    std::unordered_map<MonoKey, Elem> acc;
    acc.reserve(a.t_.size() * b.t_.size() / 2 + 8);
    for (const auto& [ka, ca] : a.t_) {
      for (const auto& [kb, cb] : b.t_) {
        auto [it, inserted] = acc.try_emplace(mono::mul(ka, kb), a.f_.zero());
        a.f_.mul_add(it->second, ca, cb);
      }
    }
    r.t_.reserve(acc.size());
    for (auto& kv : acc) {
      if (!a.f_.is_zero(kv.second)) r.t_.emplace_back(kv.first, std::move(kv.second));
    }
    std::sort(r.t_.begin(), r.t_.end(), [](const Term& x, const Term& y) { return x.first > y.first; });
    return r;
  }
  Poly& operator*=(const Poly& b) { return *this = *this * b; }

  Poly scale(const Elem& c) const {
    Poly r(f_, n_);
    if (f_.is_zero(c)) return r;
    r.t_.reserve(t_.size());
    for (const auto& [k, v] : t_) r.t_.emplace_back(k, f_.mul(v, c));
    r.drop_zeros();
    return r;
  }
  Poly times_term(MonoKey k, const Elem& c) const {
    Poly r(f_, n_);
    if (f_.is_zero(c)) return r;
    r.t_.reserve(t_.size());
    for (const auto& [kk, v] : t_) r.t_.emplace_back(mono::mul(kk, k), f_.mul(v, c));
    r.drop_zeros();
    return r;
  }
  Poly pow(unsigned e) const {
    Poly r = constant(f_, n_, f_.one());
    Poly b = *this;
    while (e != 0) {
      if (e & 1U) r *= b;
      e >>= 1U;
      if (e != 0) b *= b;
    }
    return r;
  }

  friend bool operator==(const Poly& a, const Poly& b) {
    if (a.n_ != b.n_ || a.t_.size() != b.t_.size()) return false;
    for (std::size_t i = 0; i < a.t_.size(); ++i) {
      if (a.t_[i].first != b.t_[i].first || !a.f_.eq(a.t_[i].second, b.t_[i].second)) return false;
    }
    return true;
  }

  /// Homogeneous component of degree d.
  Poly component(int d) const {
    Poly r(f_, n_);
    for (const auto& t : t_) {
      if (mono::degree(t.first) == d) r.t_.push_back(t);
    }
    return r;
  }

 private:
  void drop_zeros() {
    t_.erase(std::remove_if(t_.begin(), t_.end(), [&](const Term& t) { return f_.is_zero(t.second); }), t_.end());
  }
  void check_compatible(const Poly& b) const {
    if (n_ != b.n_) throw InvalidArgument("polynomials in different numbers of variables");
  }
  static Poly merge(const Poly& a, const Poly& b, bool subtract) {
    a.check_compatible(b);
    Poly r(a.f_, a.n_);
    r.t_.reserve(a.t_.size() + b.t_.size());
    std::size_t i = 0, j = 0;
    while (i < a.t_.size() || j < b.t_.size()) {
      if (j == b.t_.size() || (i < a.t_.size() && a.t_[i].first > b.t_[j].first)) {
        r.t_.push_back(a.t_[i++]);
      } else if (i == a.t_.size() || b.t_[j].first > a.t_[i].first) {
        r.t_.emplace_back(b.t_[j].first, subtract ? a.f_.neg(b.t_[j].second) : b.t_[j].second);
        ++j;
      } else {
        Elem c = subtract ? a.f_.sub(a.t_[i].second, b.t_[j].second) : a.f_.add(a.t_[i].second, b.t_[j].second);
        if (!a.f_.is_zero(c)) r.t_.emplace_back(a.t_[i].first, std::move(c));
        ++i;
        ++j;
      }
    }
    return r;
  }

  F f_{};
  int n_ = 0;
  std::vector<Term> t_;
};

// ---------------------------------------------------------------- S_n action

/// x_i is replaced by x_{perm[i]} (0-based), so permute(st, P) = permute(s, permute(t, P)).
template <class F>
Poly<F> permute(const std::vector<int>& perm, const Poly<F>& p) {
  const int n = p.nvars();
  if (static_cast<int>(perm.size()) != n) throw InvalidArgument("permutation size mismatch");
  std::vector<bool> seen(static_cast<std::size_t>(n), false);
  for (int v : perm) {
    if (v < 0 || v >= n || seen[static_cast<std::size_t>(v)]) throw InvalidArgument("not a permutation");
    seen[static_cast<std::size_t>(v)] = true;
  }
  std::vector<typename Poly<F>::Term> out;
  out.reserve(p.size());
  for (const auto& [k, c] : p.terms()) {
    MonoKey nk = k & (MonoKey{0xFF} << 56);
    for (int i = 0; i < n; ++i) nk |= MonoKey(mono::exponent(k, i)) << mono::shift_of(perm[static_cast<std::size_t>(i)]);
    out.emplace_back(nk, c);
  }
  return Poly<F>::from_terms(p.field(), n, std::move(out));
}

/// Transposition of variables i and j (0-based).
template <class F>
Poly<F> swap_vars(const Poly<F>& p, int i, int j) {
  std::vector<int> perm(static_cast<std::size_t>(p.nvars()));
  std::iota(perm.begin(), perm.end(), 0);
  std::swap(perm[static_cast<std::size_t>(i)], perm[static_cast<std::size_t>(j)]);
  return permute(perm, p);
}

// ---------------------------------------------------------------- substitution

/// Substitute x_i -> images[i]; the result lives in the images' ring.
template <class F>
Poly<F> substitute(const Poly<F>& p, const std::vector<Poly<F>>& images) {
  if (static_cast<int>(images.size()) != p.nvars()) throw InvalidArgument("substitution size mismatch");
  if (images.empty()) throw InvalidArgument("empty substitution");
  const int m = images[0].nvars();
  const F& f = p.field();
  std::vector<std::vector<Poly<F>>> powers(images.size());
  auto power = [&](std::size_t i, int e) -> const Poly<F>& {
    auto& cache = powers[i];
    if (cache.empty()) cache.push_back(Poly<F>::constant(f, m, f.one()));
    while (static_cast<int>(cache.size()) <= e) cache.push_back(cache.back() * images[i]);
    return cache[static_cast<std::size_t>(e)];
  };
  std::unordered_map<MonoKey, typename F::Elem> acc;
  for (const auto& [k, c] : p.terms()) {
    Poly<F> t = Poly<F>::constant(f, m, c);
    for (int i = 0; i < p.nvars(); ++i) {
      int e = mono::exponent(k, i);
      if (e > 0) t *= power(static_cast<std::size_t>(i), e);
    }
    for (const auto& [tk, tc] : t.terms()) {
      auto [it, ins] = acc.try_emplace(tk, f.zero());
      f.add_to(it->second, tc);
    }
  }
  std::vector<typename Poly<F>::Term> out(acc.begin(), acc.end());
  return Poly<F>::from_terms(f, m, std::move(out));
}

/// Evaluate at a point.
template <class F>
typename F::Elem evaluate(const Poly<F>& p, const std::vector<typename F::Elem>& point) {
  const F& f = p.field();
  if (static_cast<int>(point.size()) != p.nvars()) throw InvalidArgument("evaluation point size mismatch");
  typename F::Elem acc = f.zero();
  for (const auto& [k, c] : p.terms()) {
    typename F::Elem t = c;
    for (int i = 0; i < p.nvars(); ++i) {
      for (int e = mono::exponent(k, i); e > 0; --e) t = f.mul(t, point[static_cast<std::size_t>(i)]);
    }
    f.add_to(acc, t);
  }
  return acc;
}

/// Image under a coefficient map into another field.
template <class G, class F, class Map>
Poly<G> map_coefficients(const Poly<F>& p, const G& g, Map&& fn) {
  std::vector<typename Poly<G>::Term> out;
  out.reserve(p.size());
  for (const auto& [k, c] : p.terms()) out.emplace_back(k, fn(c));
  return Poly<G>::from_terms(g, p.nvars(), std::move(out));
}

// ---------------------------------------------------------------- calculus

template <class F>
Poly<F> derivative(const Poly<F>& p, int i) {
  const F& f = p.field();
  std::vector<typename Poly<F>::Term> out;
  out.reserve(p.size());
  for (const auto& [k, c] : p.terms()) {
    int e = mono::exponent(k, i);
    if (e == 0) continue;
    MonoKey nk = k - (MonoKey{1} << 56) - (MonoKey{1} << mono::shift_of(i));
    out.emplace_back(nk, f.mul(c, f.from_int(e)));
  }
  return Poly<F>::from_terms(f, p.nvars(), std::move(out));
}

// ---------------------------------------------------------------- pair structure

namespace detail {

/// Split the terms of p by their exponents outside {i, j}. Each group maps the
/// exponent of x_i to the coefficient; the pair degree s is fixed per group.
template <class F>
std::map<MonoKey, std::vector<std::pair<int, typename F::Elem>>> pair_groups(const Poly<F>& p, int i, int j) {
  std::map<MonoKey, std::vector<std::pair<int, typename F::Elem>>> groups;
  const MonoKey mask = ~(mono::byte_mask(i) | mono::byte_mask(j));
  for (const auto& [k, c] : p.terms()) groups[k & mask].emplace_back(mono::exponent(k, i), c);
  return groups;
}

/// Remainder of t^a modulo a monic polynomial D (coefficients low to high),
/// tabulated for a = 0..amax.
template <class F>
std::vector<std::vector<typename F::Elem>> power_remainders(const F& f, const std::vector<typename F::Elem>& monic,
                                                            int amax) {
  const int r = static_cast<int>(monic.size()) - 1;
  std::vector<std::vector<typename F::Elem>> rem;
  std::vector<typename F::Elem> cur(static_cast<std::size_t>(std::max(r, 1)), f.zero());
  if (r == 0) cur.clear();
  for (int a = 0; a <= amax; ++a) {
    if (a == 0) {
      if (r > 0) cur[0] = f.one();
    } else if (r > 0) {
      // multiply by t and reduce the overflow with D
      typename F::Elem top = cur[static_cast<std::size_t>(r - 1)];
      for (int k = r - 1; k >= 1; --k) cur[static_cast<std::size_t>(k)] = cur[static_cast<std::size_t>(k - 1)];
      cur[0] = f.zero();
      if (!f.is_zero(top)) {
        for (int k = 0; k < r; ++k) {
          cur[static_cast<std::size_t>(k)] =
              f.sub(cur[static_cast<std::size_t>(k)], f.mul(top, monic[static_cast<std::size_t>(k)]));
        }
      }
    }
    rem.push_back(cur);
  }
  return rem;
}

}  // namespace detail

/// Monic polynomial prod_{k=-m}^{m} (t - q^k) in t, coefficients low to high.
template <class F>
std::vector<typename F::Elem> q_divisor(const F& f, int m) {
  std::vector<typename F::Elem> d{f.one()};
  for (int k = -m; k <= m; ++k) {
    typename F::Elem root = f.q_power(k);
    std::vector<typename F::Elem> nd(d.size() + 1, f.zero());
    for (std::size_t a = 0; a < d.size(); ++a) {
      f.add_to(nd[a + 1], d[a]);
      nd[a] = f.sub(nd[a], f.mul(root, d[a]));
    }
    d = std::move(nd);
  }
  return d;
}

/// Largest k with (x_i - x_j)^k dividing p; nullopt for p = 0.
template <class F>
std::optional<int> divisibility_order(const Poly<F>& p, int i, int j) {
  if (i == j) throw InvalidArgument("divisibility_order needs distinct indices");
  if (p.is_zero()) return std::nullopt;
  const F& f = p.field();
  int best = -1;
  for (const auto& [rest, entries] : detail::pair_groups(p, i, j)) {
    int kmax = 0;
    for (const auto& e : entries) kmax = std::max(kmax, e.first);
    // coefficient of u^t after x_i <- x_j + u is sum_k C(k, t) p_k
    for (int t = 0; t <= kmax && (best < 0 || t < best); ++t) {
      typename F::Elem s = f.zero();
      for (const auto& [k, c] : entries) {
        if (k >= t) f.mul_add(s, f.from_integer(binomial(static_cast<unsigned long>(k), static_cast<unsigned long>(t))), c);
      }
      if (!f.is_zero(s)) {
        best = t;
        break;
      }
    }
  }
  return best;
}

/// True iff prod_{k=-m}^{m} (x_i - q^k x_j) divides p.
template <class F>
bool q_divisibility_test(const Poly<F>& p, int i, int j, int m) {
  if (i == j) throw InvalidArgument("q_divisibility_test needs distinct indices");
  const F& f = p.field();
  if (!f.has_q()) throw InvalidDomain("q_divisibility_test requires a domain with q");
  if (p.is_zero()) return true;
  const auto d = q_divisor(f, m);
  const int r = static_cast<int>(d.size()) - 1;
  const auto rem = detail::power_remainders(f, d, p.total_degree());
  for (const auto& [rest, entries] : detail::pair_groups(p, i, j)) {
    std::vector<typename F::Elem> acc(static_cast<std::size_t>(r), f.zero());
    for (const auto& [k, c] : entries) {
      for (int t = 0; t < r; ++t) f.mul_add(acc[static_cast<std::size_t>(t)], c, rem[static_cast<std::size_t>(k)][static_cast<std::size_t>(t)]);
    }
    for (const auto& a : acc) {
      if (!f.is_zero(a)) return false;
    }
  }
  return true;
}

/// Exact quotient of p by (x_i - c x_j); nullopt when the division leaves a remainder.
template <class F>
std::optional<Poly<F>> divide_by_linear(const Poly<F>& p, int i, int j, const typename F::Elem& c) {
  const F& f = p.field();
  std::vector<typename Poly<F>::Term> out;
  for (const auto& [rest, entries] : detail::pair_groups(p, i, j)) {
    const int s = mono::degree(rest) - [&] {
      int o = 0;
      for (int v = 0; v < p.nvars(); ++v) o += mono::exponent(rest, v);
      return o;
    }();
    // p_k x_i^k x_j^(s-k) = (x_i - c x_j) sum q_k x_i^k x_j^(s-1-k):
    // q_{s-1} = p_s, q_{k-1} = p_k + c q_k, and p_0 + c q_0 must vanish.
    std::vector<typename F::Elem> pk(static_cast<std::size_t>(s + 1), f.zero());
    for (const auto& [k, v] : entries) pk[static_cast<std::size_t>(k)] = v;
    if (s == 0) return std::nullopt;
    std::vector<typename F::Elem> qk(static_cast<std::size_t>(s), f.zero());
    qk[static_cast<std::size_t>(s - 1)] = pk[static_cast<std::size_t>(s)];
    for (int k = s - 1; k >= 1; --k) {
      qk[static_cast<std::size_t>(k - 1)] = f.add(pk[static_cast<std::size_t>(k)], f.mul(c, qk[static_cast<std::size_t>(k)]));
    }
    if (!f.is_zero(f.add(pk[0], f.mul(c, qk[0])))) return std::nullopt;
    const MonoKey base = rest - (MonoKey{1} << 56);
    for (int k = 0; k < s; ++k) {
      if (f.is_zero(qk[static_cast<std::size_t>(k)])) continue;
      out.emplace_back(mono::with_pair(base, i, k, j, s - 1 - k), qk[static_cast<std::size_t>(k)]);
    }
  }
  return Poly<F>::from_terms(f, p.nvars(), std::move(out));
}

/// Exact quotient by (x_i - c x_j); throws DenominatorResidue when inexact.
template <class F>
Poly<F> divide_by_linear_exact(const Poly<F>& p, int i, int j, const typename F::Elem& c) {
  auto r = divide_by_linear(p, i, j, c);
  if (!r) {
    throw DenominatorResidue("polynomial not divisible by x" + std::to_string(i + 1) + " - c*x" + std::to_string(j + 1));
  }
  return *std::move(r);
}

// ---------------------------------------------------------------- quasi-invariance

/// Ordinary test: (1 - s_ij) p divisible by (x_i - x_j)^(2m+1) for every i < j.
template <class F>
bool is_quasi_invariant(const Poly<F>& p, int m) {
  for (int i = 0; i < p.nvars(); ++i) {
    for (int j = i + 1; j < p.nvars(); ++j) {
      auto ord = divisibility_order(p - swap_vars(p, i, j), i, j);
      if (ord && *ord < 2 * m + 1) return false;
    }
  }
  return true;
}

/// q-deformed test with divisor prod_{k=-m}^{m} (x_i - q^k x_j).
template <class F>
bool is_q_quasi_invariant(const Poly<F>& p, int m) {
  for (int i = 0; i < p.nvars(); ++i) {
    for (int j = i + 1; j < p.nvars(); ++j) {
      if (!q_divisibility_test(p - swap_vars(p, i, j), i, j, m)) return false;
    }
  }
  return true;
}

template <class F>
bool is_quasi_invariant(const Poly<F>& p, int m, bool q_deformed) {
  return q_deformed ? is_q_quasi_invariant(p, m) : is_quasi_invariant(p, m);
}

// ---------------------------------------------------------------- isotypic projection

/// Throws BadCharacteristic when n! is not invertible in the field.
template <class F>
void require_nonmodular(const F& f, int n) {
  const std::uint64_t p = f.characteristic();
  if (p != 0 && p <= static_cast<std::uint64_t>(n)) {
    throw BadCharacteristic("characteristic " + std::to_string(p) + " divides " + std::to_string(n) +
                            "!; the non-modular case requires p > n");
  }
}

template <class F>
Poly<F> isotypic_project(const Poly<F>& p, IsotypicLabel label) {
  const int n = p.nvars();
  const F& f = p.field();
  require_nonmodular(f, n);
  if (label == IsotypicLabel::Std && n != 3) throw InvalidArgument("the Std label is only available for n = 3");
  const auto perms = all_permutations(n);
  auto average = [&](bool signed_sum) {
    Poly<F> acc(f, n);
    for (const auto& g : perms) {
      Poly<F> img = permute(g, p);
      if (signed_sum && permutation_sign(g) < 0) acc -= img;
      else acc += img;
    }
    return acc.scale(f.inv(f.from_int(static_cast<long>(perms.size()))));
  };
  switch (label) {
    case IsotypicLabel::Triv:
      return average(false);
    case IsotypicLabel::Sign:
      return average(true);
    case IsotypicLabel::Std:
      return p - average(false) - average(true);
  }
  return p;
}

// ---------------------------------------------------------------- n = 3 helpers

template <class F>
struct TranslationSplit {
  Poly<F> divisible;  // every term carries a factor e1 = x1 + x2 + x3
  Poly<F> reduced;    // polynomial in x1 - x3, x2 - x3
  Poly<F> reduced_y;  // the same in the variables (y1, y2)
};

/// Write p in coordinates (e1, y1, y2) = (x1+x2+x3, x1-x3, x2-x3) and split off the terms with e1.
template <class F>
TranslationSplit<F> translation_split(const Poly<F>& p) {
  if (p.nvars() != 3) throw InvalidArgument("translation_split needs n = 3");
  const F& f = p.field();
  if (f.characteristic() == 3) throw BadCharacteristic("translation_split needs 3 to be invertible");
  const auto third = f.inv(f.from_int(3));
  auto lin = [&](long ce, long c1, long c2) {
    Poly<F> r(f, 3);
    r += Poly<F>::variable(f, 3, 0).scale(f.mul(f.from_int(ce), third));
    r += Poly<F>::variable(f, 3, 1).scale(f.mul(f.from_int(c1), third));
    r += Poly<F>::variable(f, 3, 2).scale(f.mul(f.from_int(c2), third));
    return r;
  };
  // variables of the intermediate ring: (e1, y1, y2)
  Poly<F> in_e = substitute(p, {lin(1, 2, -1), lin(1, -1, 2), lin(1, -1, -1)});
  std::vector<typename Poly<F>::Term> with_e, without_e;
  for (const auto& t : in_e.terms()) {
    if (mono::exponent(t.first, 0) > 0) with_e.push_back(t);
    else without_e.push_back(t);
  }
  auto x = [&](int i) { return Poly<F>::variable(f, 3, i); };
  const std::vector<Poly<F>> back{x(0) + x(1) + x(2), x(0) - x(2), x(1) - x(2)};
  Poly<F> reduced_e = Poly<F>::from_terms(f, 3, without_e);
  TranslationSplit<F> out;
  out.divisible = substitute(Poly<F>::from_terms(f, 3, with_e), back);
  out.reduced = substitute(reduced_e, back);
  Poly<F> y1 = Poly<F>::variable(f, 2, 0), y2 = Poly<F>::variable(f, 2, 1);
  out.reduced_y = substitute(reduced_e, {Poly<F>(f, 2), y1, y2});
  return out;
}

/// P2 = sum of squared differences and P3 = (x1+x2-2x3)(x2+x3-2x1)(x3+x1-2x2).
template <class F>
std::pair<Poly<F>, Poly<F>> elementary_invariants(const F& f) {
  auto x = [&](int i) { return Poly<F>::variable(f, 3, i); };
  auto two = [&](const Poly<F>& a) { return a.scale(f.from_int(2)); };
  Poly<F> d12 = x(0) - x(1), d23 = x(1) - x(2), d31 = x(2) - x(0);
  Poly<F> p2 = d12 * d12 + d23 * d23 + d31 * d31;
  Poly<F> p3 = (x(0) + x(1) - two(x(2))) * (x(1) + x(2) - two(x(0))) * (x(2) + x(0) - two(x(1)));
  return {p2, p3};
}

/// prod_{i<j} (x_i - x_j).
template <class F>
Poly<F> vandermonde(const F& f, int n) {
  Poly<F> v = Poly<F>::constant(f, n, f.one());
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) v *= Poly<F>::variable(f, n, i) - Poly<F>::variable(f, n, j);
  }
  return v;
}

// ---------------------------------------------------------------- formatting

namespace detail {
inline bool needs_parens(const std::string& s) {
  return s.find(' ') != std::string::npos || s.find('/') != std::string::npos;
}
}  // namespace detail

/// Terms "c * x1^a x2^b" joined by " + ", leading term first.
template <class F>
std::string to_text(const Poly<F>& p) {
  if (p.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [k, c] : p.terms()) {
    if (!first) os << " + ";
    first = false;
    std::string cs = p.field().to_string(c);
    const bool q_coeff = p.field().has_q();
    if (q_coeff && detail::needs_parens(cs)) cs = "(" + cs + ")";
    os << cs;
    bool any = false;
    for (int i = 0; i < p.nvars(); ++i) {
      int e = mono::exponent(k, i);
      if (e == 0) continue;
      os << (any ? " " : " * ") << "x" << (i + 1);
      if (e > 1) os << "^" << e;
      any = true;
    }
  }
  return os.str();
}

template <class F>
json to_json(const Poly<F>& p) {
  json terms = json::array();
  for (const auto& [k, c] : p.terms()) terms.push_back(json::array({mono::exponents(k, p.nvars()), p.field().to_json(c)}));
  return json{{"n", p.nvars()}, {"domain", p.field().spec().name()}, {"terms", terms}};
}

}  // namespace quasinv
