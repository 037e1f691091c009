#include "quasinv/generators.hpp"

#include <algorithm>

namespace quasinv {

namespace {

ZPoly dehomogenize(const BinaryForm& f) { return ZPoly(f.coeffs()); }

}  // namespace

// ---------------------------------------------------------------- BinaryForm

BinaryForm::BinaryForm(std::vector<Integer> c) : c_(std::move(c)) {
  if (c_.empty()) throw InvalidArgument("a binary form needs at least one coefficient");
}

BinaryForm BinaryForm::zero(int degree) {
  if (degree < 0) throw RangeViolation("negative degree");
  return BinaryForm(std::vector<Integer>(static_cast<std::size_t>(degree + 1), 0));
}

bool BinaryForm::is_zero() const {
  return std::all_of(c_.begin(), c_.end(), [](const Integer& c) { return c == 0; });
}

BinaryForm operator+(const BinaryForm& a, const BinaryForm& b) {
  if (a.degree() != b.degree()) throw InvalidArgument("adding binary forms of different degrees");
  BinaryForm r = a;
  for (std::size_t i = 0; i < b.c_.size(); ++i) r.c_[i] += b.c_[i];
  return r;
}

BinaryForm operator-(const BinaryForm& a, const BinaryForm& b) {
  if (a.degree() != b.degree()) throw InvalidArgument("subtracting binary forms of different degrees");
  BinaryForm r = a;
  for (std::size_t i = 0; i < b.c_.size(); ++i) r.c_[i] -= b.c_[i];
  return r;
}

BinaryForm operator*(const BinaryForm& a, const BinaryForm& b) {
  BinaryForm r = BinaryForm::zero(a.degree() + b.degree());
  for (std::size_t i = 0; i < a.c_.size(); ++i) {
    if (a.c_[i] == 0) continue;
    for (std::size_t j = 0; j < b.c_.size(); ++j) {
      mpz_addmul(r.c_[i + j].get_mpz_t(), a.c_[i].get_mpz_t(), b.c_[j].get_mpz_t());
    }
  }
  return r;
}

BinaryForm operator*(const BinaryForm& a, const Integer& s) {
  BinaryForm r = a;
  for (auto& c : r.c_) c *= s;
  return r;
}

Integer BinaryForm::at_diagonal() const {
  Integer s = 0;
  for (const auto& c : c_) s += c;
  return s;
}

BinaryForm BinaryForm::swapped() const {
  BinaryForm r = *this;
  std::reverse(r.c_.begin(), r.c_.end());
  return r;
}

BinaryForm BinaryForm::s23() const {
  // c_i y1^(d-i) y2^i -> c_i (y1 - y2)^(d-i) (-y2)^i
  const int d = degree();
  BinaryForm r = zero(d);
  for (int i = 0; i <= d; ++i) {
    const Integer& c = c_[static_cast<std::size_t>(i)];
    if (c == 0) continue;
    Integer b = 1;  // C(d - i, j)
    for (int j = 0; j <= d - i; ++j) {
      Integer term = c * b;
      if ((i + j) % 2 != 0) term = -term;
      r.c_[static_cast<std::size_t>(i + j)] += term;
      b = b * (d - i - j) / (j + 1);
    }
  }
  return r;
}

BinaryForm BinaryForm::divide_by_diff_squared() const {
  // in t = y2 / y1 the divisor is (t - 1)^2 = t^2 - 2t + 1
  const int d = degree();
  if (d < 2) {
    if (is_zero()) return zero(0);
    throw DenominatorResidue("form of degree < 2 is not divisible by (y1 - y2)^2");
  }
  std::vector<Integer> r = c_;
  std::vector<Integer> q(static_cast<std::size_t>(d - 1), 0);
  for (int k = d; k >= 2; --k) {
    const Integer top = r[static_cast<std::size_t>(k)];
    q[static_cast<std::size_t>(k - 2)] = top;
    r[static_cast<std::size_t>(k - 1)] += 2 * top;
    r[static_cast<std::size_t>(k - 2)] -= top;
  }
  if (r[0] != 0 || r[1] != 0) throw DenominatorResidue("form is not divisible by (y1 - y2)^2");
  return BinaryForm(std::move(q));
}

bool BinaryForm::divisible_by(const BinaryForm& g) const {
  if (g.c_.back() == 0) throw InvalidArgument("divisor must have a nonzero y2^deg coefficient");
  if (is_zero()) return true;
  if (g.degree() > degree()) return false;
  ZPoly gp = dehomogenize(g).primitive_part();
  return dehomogenize(*this).try_divide(gp).has_value();
}

Integer BinaryForm::content() const {
  Integer g = 0;
  for (const auto& c : c_) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
  return g;
}

BinaryForm BinaryForm::normalized() const {
  Integer g = content();
  if (g == 0) throw NormalizationFailure("zero form has no normalization");
  auto first = std::find_if(c_.begin(), c_.end(), [](const Integer& c) { return c != 0; });
  if (*first < 0) g = -g;
  BinaryForm r = *this;
  for (auto& c : r.c_) mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), g.get_mpz_t());
  return r;
}

json BinaryForm::to_json() const {
  json arr = json::array();
  for (const auto& c : c_) arr.push_back(c.get_str());
  return arr;
}

BinaryForm BinaryForm::from_json(const json& j) {
  if (!j.is_array() || j.empty()) throw InvalidArgument("binary form must be a nonempty array");
  std::vector<Integer> c;
  for (const auto& e : j) {
    if (!e.is_string()) throw InvalidArgument("binary form coefficients must be decimal strings");
    Integer v;
    if (v.set_str(e.get<std::string>(), 10) != 0) throw InvalidArgument("bad integer " + e.get<std::string>());
    c.push_back(std::move(v));
  }
  return BinaryForm(std::move(c));
}

std::string BinaryForm::to_string() const {
  std::string out;
  const int d = degree();
  for (int i = 0; i <= d; ++i) {
    const Integer& c = c_[static_cast<std::size_t>(i)];
    if (c == 0) continue;
    if (!out.empty()) out += " + ";
    out += c.get_str();
    if (d - i > 0) out += " * y1^" + std::to_string(d - i);
    if (i > 0) out += (d - i > 0 ? " y2^" : " * y2^") + std::to_string(i);
  }
  return out.empty() ? "0" : out;
}

BinaryForm p2_form() { return BinaryForm({2, -2, 2}); }
BinaryForm p3_form() { return BinaryForm({-2, 3, 3, -2}); }

// ---------------------------------------------------------------- chain

json GeneratorChain::to_json() const {
  return json{{"schema", 1}, {"m", m}, {"K", K.to_json()}, {"L", L.to_json()}, {"c", c.get_str()}};
}

GeneratorChain GeneratorChain::from_json(const json& j) {
  try {
    if (j.at("schema").get<int>() != 1) throw CheckpointCorrupt("unknown chain schema");
    GeneratorChain g;
    g.m = j.at("m").get<int>();
    g.K = BinaryForm::from_json(j.at("K"));
    g.L = BinaryForm::from_json(j.at("L"));
    if (g.c.set_str(j.at("c").get<std::string>(), 10) != 0) throw CheckpointCorrupt("bad wedge scalar");
    if (g.m < 0 || g.K.degree() != g.m || g.L.degree() != g.m + 1) {
      throw CheckpointCorrupt("chain degrees do not match its level");
    }
    if (g.K.swapped() != g.K || g.L.swapped() != g.L) throw CheckpointCorrupt("chain forms are not symmetric");
    if (wedge_scalar(g.K, g.L, g.m) != g.c) throw CheckpointCorrupt("stored wedge scalar does not match the forms");
    return g;
  } catch (const CheckpointCorrupt&) {
    throw;
  } catch (const std::exception& e) {
    throw CheckpointCorrupt(std::string("malformed chain record: ") + e.what());
  }
}

GeneratorChain initial_chain() {
  GeneratorChain g;
  g.m = 0;
  g.K = BinaryForm({1});
  g.L = BinaryForm({1, 1});
  g.c = wedge_scalar(g.K, g.L, 0);
  return g;
}

Integer wedge_scalar(const BinaryForm& K, const BinaryForm& L, int m) {
  BinaryForm w = K * L.s23() - L * K.s23();
  if (w.degree() != 2 * m + 1) throw NotProportional("wedge has the wrong degree");
  const auto& c = w.coeffs();
  for (std::size_t i = 0; i + 1 < c.size(); ++i) {
    if (c[i] != 0) throw NotProportional("wedge is not a multiple of the sign generator");
  }
  if (c.back() == 0) throw NotProportional("wedge vanishes");
  return c.back();
}

namespace {

/// (b X - a Y) / (y1 - y2)^2 with a = X(1,1), b = Y(1,1).
BinaryForm lift_one(const BinaryForm& X, const BinaryForm& Y, const char* what) {
  const Integer a = X.at_diagonal(), b = Y.at_diagonal();
  if (a == 0 && b == 0) {
    throw DegenerateLift(std::string("both reductions vanish for ") + what);
  }
  BinaryForm comb = X * b - Y * a;
  if (comb.is_zero()) throw DegenerateLift(std::string("the combination vanishes for ") + what);
  return comb.divide_by_diff_squared().normalized();
}

}  // namespace

GeneratorChain lift_chain(const GeneratorChain& chain, int verify_up_to) {
  const BinaryForm p2 = p2_form(), p3 = p3_form();
  GeneratorChain next;
  next.m = chain.m + 1;
  next.K = lift_one(p3 * chain.K, p2 * chain.L, "K");
  next.L = lift_one(p2 * p2 * chain.K, p3 * chain.L, "L");
  next.c = wedge_scalar(next.K, next.L, next.m);
  if (next.m <= verify_up_to) {
    RationalField f;
    if (!is_quasi_invariant(next.A(f), next.m) || !is_quasi_invariant(next.B(f), next.m)) {
      throw MembershipFailure("lifted generators fail the divisibility test at m = " + std::to_string(next.m));
    }
  }
  return next;
}

namespace {

/// The Std slice of Q_m in degree d equals the span of the given elements and
/// their images under the 3-cycle.
bool spans_std_slice(const std::vector<Poly<RationalField>>& gens, int m, int d) {
  RationalField f;
  GradedBasis<RationalField> b = quasi_basis(f, 3, m, d, false);
  auto slice = projected_vectors(b, IsotypicLabel::Std, f);
  const std::size_t slice_rank = rank_of(f, slice, b.columns.size());
  std::unordered_map<MonoKey, std::size_t> index;
  for (std::size_t c = 0; c < b.columns.size(); ++c) index.emplace(b.columns[c], c);
  auto vec = [&](const Poly<RationalField>& p) {
    std::vector<Rational> v(b.columns.size(), 0);
    for (const auto& [k, c] : p.terms()) v[index.at(k)] = c;
    return v;
  };
  const std::vector<int> cyc{1, 2, 0};
  std::vector<std::vector<Rational>> own;
  for (const auto& g : gens) {
    own.push_back(vec(g));
    own.push_back(vec(permute(cyc, g)));
  }
  if (rank_of(f, own, b.columns.size()) != slice_rank) return false;
  slice.insert(slice.end(), own.begin(), own.end());
  return rank_of(f, slice, b.columns.size()) == slice_rank;
}

}  // namespace

ChainReport verify_chain(const GeneratorChain& chain) {
  RationalField f;
  const int m = chain.m;
  const Poly<RationalField> A = chain.A(f), B = chain.B(f);
  ChainReport r;
  r.m = m;
  r.membership = is_quasi_invariant(A, m) && is_quasi_invariant(B, m);
  const std::vector<int> cyc{1, 2, 0};
  auto orbit = [&](const Poly<RationalField>& p) {
    Poly<RationalField> s1 = permute(cyc, p);
    return (p + s1 + permute(cyc, s1)).is_zero();
  };
  r.orbit_sum = orbit(A) && orbit(B);
  const BinaryForm p2 = p2_form(), p3 = p3_form();
  r.not_divisible = !chain.K.divisible_by(p2) && !chain.K.divisible_by(p3) && !chain.L.divisible_by(p2) &&
                    !chain.L.divisible_by(p3);
  const Poly<RationalField> e1 = Poly<RationalField>::variable(f, 3, 0) + Poly<RationalField>::variable(f, 3, 1) +
                                Poly<RationalField>::variable(f, 3, 2);
  r.span = spans_std_slice({A}, m, 3 * m + 1) && spans_std_slice({B, e1 * A}, m, 3 * m + 2);
  return r;
}

// ---------------------------------------------------------------- primes

std::vector<std::uint64_t> differing_primes(const Integer& c, std::uint64_t prime_bound) {
  if (c == 0) throw ZeroInput("wedge scalar is zero");
  std::vector<std::uint64_t> out;
  for (std::uint64_t p : primes_up_to(prime_bound)) {
    if (p > 3 && mpz_divisible_ui_p(c.get_mpz_t(), p) != 0) out.push_back(p);
  }
  return out;
}

RenXuWitness renxu_check(int n, int m, std::uint64_t p) {
  if (n < 3) throw RangeViolation("renxu_check needs n >= 3");
  if (m < 0) throw RangeViolation("m must be non-negative");
  if (!is_prime(p)) throw InvalidArgument(std::to_string(p) + " is not prime");
  RenXuWitness w;
  w.n = n;
  w.m = m;
  w.p = p;
  const Integer N = n, M = m, C = binomial(static_cast<unsigned long>(n), 2);
  const Integer top = M * N;
  Integer pa = p;
  for (int a = 1; pa <= top; ++a, pa *= p) {
    for (int k = 0; pa * (N * k + 1) <= top; ++k) {
      const Integer K = k;
      if (M * N * (N - 2) + C <= pa * (N * (N - 2) * K + C - 1)) w.witnesses.emplace_back(a, k);
    }
  }
  w.satisfied = !w.witnesses.empty();
  return w;
}

std::vector<std::uint64_t> renxu_primes(int m, std::uint64_t bound) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t p : primes_up_to(bound)) {
    if (p > 3 && renxu_check(3, m, p).satisfied) out.push_back(p);
  }
  return out;
}

Numerator char0_numerator(int m) {
  return {{0, 1}, {3 * m + 1, 2}, {3 * m + 2, 2}, {6 * m + 3, 1}};
}

Numerator predicted_charp_numerator(int m, std::uint64_t p) {
  RenXuWitness w = renxu_check(3, m, p);
  if (!w.satisfied) return char0_numerator(m);
  auto best = std::max_element(w.witnesses.begin(), w.witnesses.end());
  const int a = best->first, k = best->second;
  Integer pa;
  mpz_ui_pow_ui(pa.get_mpz_t(), p, static_cast<unsigned long>(a));
  const Integer e_big = pa * (2 * k + 1) >= 2 * m + 1 ? pa * (3 * k + 1) : pa * (3 * k + 2);
  const int e = static_cast<int>(e_big.get_si());
  const int top = 6 * m + 3;
  Numerator out{{0, 1}, {e, 2}, {top - e, 2}, {top, 1}};
  std::sort(out.begin(), out.end());
  return out;
}

json numerator_to_json(const Numerator& num) {
  json arr = json::array();
  for (const auto& [e, c] : num) arr.push_back(json::array({e, c.get_str()}));
  return arr;
}

}  // namespace quasinv
