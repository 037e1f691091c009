#include "quasinv/qdeform.hpp"

#include <algorithm>
#include <map>

#include "quasinv/errors.hpp"
#include "quasinv/linalg.hpp"
#include "quasinv/quasi.hpp"

namespace quasinv {

namespace {

using QPolyX = Poly<FormalQField>;

ZPoly lcm(const ZPoly& a, const ZPoly& b) { return (a * b).divide_exact(gcd(a, b)); }

json zpoly_json(const ZPoly& p) {
  json j = json::array();
  for (const auto& c : p.coeffs()) j.push_back(c.get_str());
  return j;
}

// numerator and denominator with q^l factors removed
ZPoly strip_q(const ZPoly& p) { return p.is_zero() ? p : p.shift_down(p.low_order()); }

}  // namespace

Poly<FormalQField> integral_primitive(const Poly<FormalQField>& p) {
  if (p.is_zero()) throw ZeroInput("integral_primitive of zero");
  ZPoly den = 1;
  for (const auto& [k, c] : p.terms()) den = lcm(den, c.den);
  std::vector<ZPoly> nums;
  nums.reserve(p.size());
  for (const auto& [k, c] : p.terms()) nums.push_back(c.num * den.divide_exact(c.den));
  ZPoly g = nums.front();
  for (const auto& v : nums) g = gcd(g, v);
  if (nums.front().lead() * g.lead() < 0) g = -g;
  std::vector<QPolyX::Term> terms;
  terms.reserve(p.size());
  std::size_t i = 0;
  for (const auto& [k, c] : p.terms()) terms.emplace_back(k, RatFunc(nums[i++].divide_exact(g)));
  return QPolyX::from_terms(p.field(), p.nvars(), std::move(terms));
}

std::vector<Poly<FormalQField>> q_std_antisymmetric(int m, int d) {
  FormalQField f;
  const GradedBasis<FormalQField> b = quasi_basis(f, 3, m, d, true);
  std::unordered_map<MonoKey, std::size_t> index;
  for (std::size_t c = 0; c < b.columns.size(); ++c) index.emplace(b.columns[c], c);
  std::vector<std::vector<RatFunc>> vecs;
  for (const auto& p : b.basis) {
    const QPolyX s = isotypic_project(p, IsotypicLabel::Std);
    const QPolyX img = s - swap_vars(s, 0, 1);
    std::vector<RatFunc> v(b.columns.size(), f.zero());
    for (const auto& [k, c] : img.terms()) v[index.at(k)] = c;
    vecs.push_back(std::move(v));
  }
  const auto ech = detail::gauss_jordan(f, std::move(vecs), b.columns.size());
  std::vector<QPolyX> out;
  for (const auto& row : ech.rows) {
    std::vector<QPolyX::Term> terms;
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (!f.is_zero(row[c])) terms.emplace_back(b.columns[c], row[c]);
    }
    out.push_back(integral_primitive(QPolyX::from_terms(f, 3, std::move(terms))));
  }
  return out;
}

std::pair<std::vector<std::pair<std::uint64_t, int>>, ZPoly> cyclotomic_factors(const ZPoly& c) {
  if (c.is_zero()) throw ZeroInput("cyclotomic_factors of zero");
  std::vector<std::pair<std::uint64_t, int>> out;
  ZPoly rest = c;
  const auto bound = static_cast<std::uint64_t>(c.degree()) + 1;
  for (std::uint64_t d = 1; d <= bound && rest.degree() > 0; ++d) {
    const ZPoly phi = cyclotomic_polynomial(d);
    if (phi.degree() > rest.degree()) continue;
    int mult = 0;
    while (auto q = rest.try_divide(phi)) {
      rest = *q;
      ++mult;
    }
    if (mult > 0) out.emplace_back(d, mult);
  }
  return {out, rest};
}

std::vector<std::uint64_t> QWedge::excluded() const {
  std::vector<std::uint64_t> out;
  for (const auto& [d, e] : cyclotomic) {
    if (d >= 2) out.push_back(d);
  }
  return out;
}

json QWedge::to_json() const {
  json j;
  j["m"] = m;
  j["c"] = zpoly_json(c);
  json fs = json::array();
  for (const auto& [d, e] : cyclotomic) fs.push_back({{"d", d}, {"multiplicity", e}});
  j["cyclotomic_factors"] = std::move(fs);
  j["remainder"] = zpoly_json(remainder);
  j["non_cyclotomic"] = non_cyclotomic();
  return j;
}

QWedge q_wedge_polynomial(int m) {
  if (m < 0) throw RangeViolation("m must be non-negative");
  FormalQField f;
  const auto low = q_std_antisymmetric(m, 3 * m + 1);
  const auto high = q_std_antisymmetric(m, 3 * m + 2);
  if (low.size() != 1 || high.size() != 2) {
    throw TheoremViolation("unexpected Std slice sizes " + std::to_string(low.size()) + ", " +
                           std::to_string(high.size()) + " at m = " + std::to_string(m));
  }
  const QPolyX& A = low.front();
  const QPolyX e1 = QPolyX::variable(f, 3, 0) + QPolyX::variable(f, 3, 1) + QPolyX::variable(f, 3, 2);
  const QPolyX e1A = e1 * A;

  // the element of the slice not proportional to e1 A
  const QPolyX* B = nullptr;
  RatFunc w;
  for (const auto& h : high) {
    try {
      w = wedge_scalar(A, h, m, true);
      B = &h;
      break;
    } catch (const NotProportional&) {
    }
  }
  if (B == nullptr) throw NotProportional("no degree 3m+2 element has a nonzero wedge with A");

  // gcd of the 2x2 minors of the rows e1 A, B
  std::map<MonoKey, ZPoly> r1, r2;
  for (const auto& [k, c] : e1A.terms()) r1[k] = c.num;
  for (const auto& [k, c] : B->terms()) r2[k] = c.num;
  std::vector<MonoKey> cols;
  for (const auto& [k, c] : r1) cols.push_back(k);
  for (const auto& [k, c] : r2) {
    if (!r1.count(k)) cols.push_back(k);
  }
  auto at = [](const std::map<MonoKey, ZPoly>& r, MonoKey k) {
    auto it = r.find(k);
    return it == r.end() ? ZPoly() : it->second;
  };
  ZPoly G;
  for (std::size_t i = 0; i < cols.size() && !(G.degree() == 0); ++i) {
    for (std::size_t j = i + 1; j < cols.size(); ++j) {
      const ZPoly minor = at(r1, cols[i]) * at(r2, cols[j]) - at(r1, cols[j]) * at(r2, cols[i]);
      if (minor.is_zero()) continue;
      G = G.is_zero() ? minor : gcd(G, minor);
      if (G.degree() == 0) break;
    }
  }
  if (G.is_zero()) throw NotProportional("B is proportional to e1 A");

  ZPoly num = strip_q(w.num), den = strip_q(w.den * G);
  const ZPoly g = gcd(num, den);
  num = strip_q(num.divide_exact(g));
  den = strip_q(den.divide_exact(g));
  if (den.degree() > 0) throw NotProportional("c(q) is not a polynomial: denominator " + den.to_string());

  QWedge out;
  out.m = m;
  out.c = num.primitive_part();
  std::tie(out.cyclotomic, out.remainder) = cyclotomic_factors(out.c);
  return out;
}

std::pair<int, int> thm56_range(int n, int m) {
  if (n < 2) throw RangeViolation("n must be at least 2");
  if (m < 0) throw RangeViolation("m must be non-negative");
  if (n == 2) return {1, 0};
  const long pairs = static_cast<long>(n) * (n - 1) / 2;
  const long lo = ceil_div(Integer(static_cast<long>(m) * n * (n - 2) + pairs), Integer(pairs - 1)).get_si();
  return {static_cast<int>(lo), m * n};
}

std::string to_string(PmqCase c) {
  switch (c) {
    case PmqCase::LargeP: return "LargeP";
    case PmqCase::OddSmallP: return "OddSmallP";
    case PmqCase::EvenSmallP: return "EvenSmallP";
  }
  return "?";
}

PmqElement construct_pmq(int n, int m, std::uint64_t p) {
  const auto [lo, hi] = thm56_range(n, m);
  if (p < 2 || static_cast<long>(p) < lo || static_cast<long>(p) > hi) {
    throw RangeViolation("p = " + std::to_string(p) + " is outside [" + std::to_string(lo) + ", " +
                         std::to_string(hi) + "] for n = " + std::to_string(n) + ", m = " + std::to_string(m));
  }
  CyclotomicField f(p);
  using P = Poly<CyclotomicField>;
  auto x = [&](int i) { return P::variable(f, n, i); };
  const auto pp = static_cast<unsigned>(p);
  PmqElement out;
  out.n = n;
  out.m = m;
  out.p = p;
  P poly = x(0).pow(pp) - x(1).pow(pp);
  const long P_ = static_cast<long>(p);
  if (P_ >= 2L * m + 1) {
    out.kind = PmqCase::LargeP;
  } else {
    out.kind = P_ % 2 == 1 ? PmqCase::OddSmallP : PmqCase::EvenSmallP;
    const long k0 = P_ % 2 == 1 ? (P_ + 1) / 2 : (P_ + 2) / 2;
    if (out.kind == PmqCase::EvenSmallP) {
      for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) poly *= x(i) + x(j);
      }
    }
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        if (i == j) continue;
        for (long k = k0; k <= m; ++k) poly *= x(i) - x(j).scale(f.q_power(k));
      }
    }
  }
  out.degree = poly.total_degree();
  const long pairs = static_cast<long>(n) * (n - 1) / 2;
  const long expected = P_ >= 2L * m + 1 ? P_ : P_ + pairs * (2L * m + 1 - P_);
  if (out.degree != expected || (out.kind != PmqCase::LargeP && out.degree > static_cast<long>(m) * n)) {
    throw MembershipFailure("P_{m,q} has degree " + std::to_string(out.degree) + ", expected " +
                            std::to_string(expected));
  }
  if (!is_quasi_invariant(poly, m, true)) throw MembershipFailure("P_{m,q} fails the q-divisibility test");
  if (isotypic_project(poly, IsotypicLabel::Triv) == poly) throw MembershipFailure("P_{m,q} is symmetric");
  out.poly = std::move(poly);
  return out;
}

json QDeformationReport::to_json() const {
  json j;
  j["schema"] = 1;
  j["n"] = n;
  j["m"] = m;
  j["p"] = p;
  j["d_max"] = d_max;
  j["thm56_range"] = thm56.first <= thm56.second ? json::array({thm56.first, thm56.second}) : json::array();
  j["flat_values_excluded"] = flat_values_excluded;
  if (wedge) j["wedge"] = wedge->to_json();
  j["dims_expected"] = dims_expected;
  j["dims_cyclotomic"] = dims_cyclotomic;
  if (!dims_formal.empty()) j["dims_formal"] = dims_formal;
  if (!dims_prime.empty()) j["dims_prime_field"] = dims_prime;
  j["agreement"] = agreement;
  j["first_difference"] = first_difference ? json(*first_difference) : json(nullptr);
  j["dominance"] = dominance;
  if (pmq) {
    j["pmq"] = {{"case", to_string(pmq->kind)}, {"degree", pmq->degree}, {"poly", to_text(pmq->poly)}};
  }
  j["conjecture_holds"] = conjecture_holds;
  return j;
}

QDeformationReport flatness_check(int n, int m, std::uint64_t p, int d_max, bool with_formal, unsigned threads) {
  if (n != 2 && n != 3) throw RangeViolation("flatness_check supports n = 2 and n = 3");
  if (m < 0) throw RangeViolation("m must be non-negative");
  if (p < 2) throw InvalidDomain("the root of unity needs order at least 2");
  if (d_max < 0) d_max = n == 3 ? 6 * m + 4 : 2 * m + 4;

  QDeformationReport r;
  r.n = n;
  r.m = m;
  r.p = p;
  r.d_max = d_max;
  r.thm56 = thm56_range(n, m);
  const bool in_range = r.thm56.first <= static_cast<long>(p) && static_cast<long>(p) <= r.thm56.second;

  const Numerator num = n == 3 ? char0_numerator(m) : Numerator{{0, 1}, {2 * m + 1, 1}};
  for (const auto& v : series_from_numerator(num, n, d_max)) r.dims_expected.push_back(v.get_ui());
  r.dims_cyclotomic = hilbert_data(CyclotomicField(p), n, m, d_max, true, threads).dims;
  if (with_formal) r.dims_formal = hilbert_data(FormalQField{}, n, m, d_max, true, threads).dims;
  if (p > static_cast<std::uint64_t>(n) && is_prime(p)) {
    r.dims_prime = hilbert_data(PrimeField(p), n, m, d_max, false, threads).dims;
  }
  for (int d = 0; d <= d_max; ++d) {
    const auto i = static_cast<std::size_t>(d);
    if (r.dims_cyclotomic[i] != r.dims_expected[i] && !r.first_difference) r.first_difference = d;
    if (!r.dims_formal.empty() && r.dims_formal[i] > r.dims_cyclotomic[i]) r.dominance = false;
    if (!r.dims_prime.empty() && r.dims_cyclotomic[i] > r.dims_prime[i]) r.dominance = false;
  }
  r.agreement = !r.first_difference.has_value();

  if (n == 3) {
    r.wedge = q_wedge_polynomial(m);
    r.flat_values_excluded = r.wedge->excluded();
    std::vector<std::uint64_t> range;
    for (long v = r.thm56.first; v <= r.thm56.second; ++v) range.push_back(static_cast<std::uint64_t>(v));
    for (auto v : range) {
      if (!std::binary_search(r.flat_values_excluded.begin(), r.flat_values_excluded.end(), v)) {
        throw TheoremViolation("Phi_" + std::to_string(v) + " does not divide c(q) at m = " + std::to_string(m));
      }
    }
    r.conjecture_holds = r.flat_values_excluded == range;
  }
  if (in_range) r.pmq = construct_pmq(n, m, p);
  return r;
}

Poly<CyclotomicField> minimal_qstd_generator(int m, std::uint64_t p) {
  PmqElement e = construct_pmq(3, m, p);
  CyclotomicField f(p);
  for (int d = 0; d < e.degree; ++d) {
    if (isotypic_dimension(f, 3, m, d, IsotypicLabel::Std, true) > 0) {
      throw MinimalityFailure("Std element of degree " + std::to_string(d) + " below deg P_{m,q} = " +
                              std::to_string(e.degree));
    }
  }
  return std::move(e.poly);
}

}  // namespace quasinv
