#include "quasinv/upoly.hpp"

#include <algorithm>
#include <sstream>

#include "quasinv/errors.hpp"

namespace quasinv {

// ---------------------------------------------------------------- ZPoly

ZPoly::ZPoly(std::vector<Integer> coeffs) : c_(std::move(coeffs)) { trim(); }

ZPoly::ZPoly(long c) {
  if (c != 0) c_.emplace_back(c);
}

ZPoly ZPoly::monomial(const Integer& c, std::size_t exp) {
  ZPoly r;
  if (c == 0) return r;
  r.c_.assign(exp + 1, Integer(0));
  r.c_[exp] = c;
  return r;
}

void ZPoly::trim() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

std::size_t ZPoly::low_order() const {
  std::size_t k = 0;
  while (k < c_.size() && c_[k] == 0) ++k;
  return k;
}

ZPoly ZPoly::operator-() const {
  ZPoly r = *this;
  for (auto& x : r.c_) x = -x;
  return r;
}

ZPoly& ZPoly::operator+=(const ZPoly& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
  for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
  trim();
  return *this;
}

ZPoly& ZPoly::operator-=(const ZPoly& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
  for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
  trim();
  return *this;
}

ZPoly& ZPoly::operator*=(const Integer& s) {
  if (s == 0) {
    c_.clear();
    return *this;
  }
  for (auto& x : c_) x *= s;
  return *this;
}

ZPoly operator*(const ZPoly& a, const ZPoly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<Integer> out(a.c_.size() + b.c_.size() - 1);
  for (std::size_t i = 0; i < a.c_.size(); ++i) {
    if (a.c_[i] == 0) continue;
    for (std::size_t j = 0; j < b.c_.size(); ++j) {
      mpz_addmul(out[i + j].get_mpz_t(), a.c_[i].get_mpz_t(), b.c_[j].get_mpz_t());
    }
  }
  return ZPoly(std::move(out));
}

std::optional<ZPoly> ZPoly::try_divide(const ZPoly& d) const {
  if (d.is_zero()) throw ZeroInput("polynomial division by zero");
  if (is_zero()) return ZPoly{};
  if (degree() < d.degree()) return std::nullopt;
  std::vector<Integer> rem = c_;
  std::vector<Integer> quot(c_.size() - d.c_.size() + 1);
  const Integer& lc = d.lead();
  for (std::size_t k = quot.size(); k-- > 0;) {
    Integer& top = rem[k + d.c_.size() - 1];
    if (top == 0) continue;
    if (!mpz_divisible_p(top.get_mpz_t(), lc.get_mpz_t())) return std::nullopt;
    Integer qk;
    mpz_divexact(qk.get_mpz_t(), top.get_mpz_t(), lc.get_mpz_t());
    for (std::size_t j = 0; j < d.c_.size(); ++j) {
      mpz_submul(rem[k + j].get_mpz_t(), qk.get_mpz_t(), d.c_[j].get_mpz_t());
    }
    quot[k] = std::move(qk);
  }
  for (const auto& r : rem) {
    if (r != 0) return std::nullopt;
  }
  return ZPoly(std::move(quot));
}

ZPoly ZPoly::divide_exact(const ZPoly& d) const {
  auto q = try_divide(d);
  if (!q) throw ConsistencyError("inexact division in Z[q]: " + to_string() + " / " + d.to_string());
  return *std::move(q);
}

ZPoly ZPoly::divide_exact(const Integer& s) const {
  ZPoly r = *this;
  for (auto& x : r.c_) {
    if (!mpz_divisible_p(x.get_mpz_t(), s.get_mpz_t())) {
      throw ConsistencyError("inexact scalar division in Z[q]");
    }
    mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), s.get_mpz_t());
  }
  return r;
}

ZPoly ZPoly::shift_down(std::size_t k) const {
  if (k > low_order() && !is_zero()) throw ConsistencyError("q-power does not divide");
  if (is_zero()) return {};
  return ZPoly(std::vector<Integer>(c_.begin() + static_cast<long>(k), c_.end()));
}

Integer ZPoly::content() const {
  Integer g = 0;
  for (const auto& x : c_) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
    if (g == 1) break;
  }
  return g;
}

ZPoly ZPoly::primitive_part() const {
  if (is_zero()) return {};
  Integer g = content();
  if (lead() < 0) g = -g;
  if (g == 1) return *this;
  return divide_exact(g);
}

Integer ZPoly::eval(const Integer& x) const {
  Integer r = 0;
  for (std::size_t i = c_.size(); i-- > 0;) r = r * x + c_[i];
  return r;
}

std::uint64_t ZPoly::eval_mod(std::uint64_t x, std::uint64_t p) const {
  std::uint64_t r = 0;
  for (std::size_t i = c_.size(); i-- > 0;) r = add_mod(mul_mod(r, x, p), reduce_mod(c_[i], p), p);
  return r;
}

Integer ZPoly::eval_pow2(unsigned long k) const {
  Integer r = 0;
  for (std::size_t i = c_.size(); i-- > 0;) {
    mpz_mul_2exp(r.get_mpz_t(), r.get_mpz_t(), k);
    r += c_[i];
  }
  return r;
}

ZPoly ZPoly::from_balanced_digits(Integer value, const Integer& base) {
  std::vector<Integer> out;
  Integer half = base / 2;
  Integer digit;
  while (value != 0) {
    mpz_fdiv_r(digit.get_mpz_t(), value.get_mpz_t(), base.get_mpz_t());
    if (digit > half) digit -= base;
    out.push_back(digit);
    value -= digit;
    mpz_divexact(value.get_mpz_t(), value.get_mpz_t(), base.get_mpz_t());
  }
  return ZPoly(std::move(out));
}

Integer ZPoly::norm_inf() const {
  Integer r = 0;
  for (const auto& c : c_) {
    if (abs(c) > r) r = abs(c);
  }
  return r;
}

Integer ZPoly::norm_1() const {
  Integer r = 0;
  for (const auto& c : c_) r += abs(c);
  return r;
}

std::string ZPoly::to_string(const char* var) const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = c_.size(); i-- > 0;) {
    const Integer& c = c_[i];
    if (c == 0) continue;
    Integer mag = abs(c);
    if (!first) os << (c < 0 ? " - " : " + ");
    else if (c < 0) os << "-";
    first = false;
    if (i == 0 || mag != 1) {
      os << mag.get_str();
      if (i > 0) os << "*";
    }
    if (i >= 1) os << var;
    if (i >= 2) os << "^" << i;
  }
  return os.str();
}

namespace {

// Pseudo-remainder of a by b: lc(b)^(deg a - deg b + 1) * a mod b.
ZPoly pseudo_rem(ZPoly a, const ZPoly& b) {
  std::vector<Integer> r = a.coeffs();
  const int db = b.degree();
  const Integer& lc = b.lead();
  const auto& bc = b.coeffs();
  int dr = static_cast<int>(r.size()) - 1;
  while (dr >= db && !r.empty()) {
    Integer top = r[static_cast<std::size_t>(dr)];
    for (auto& x : r) x *= lc;
    for (int j = 0; j <= db; ++j) {
      mpz_submul(r[static_cast<std::size_t>(dr - db + j)].get_mpz_t(), top.get_mpz_t(),
                 bc[static_cast<std::size_t>(j)].get_mpz_t());
    }
    while (!r.empty() && r.back() == 0) r.pop_back();
    dr = static_cast<int>(r.size()) - 1;
  }
  return ZPoly(std::move(r));
}

}  // namespace

namespace {

ZPoly gcd_prs(ZPoly u, ZPoly v) {
  if (u.degree() < v.degree()) std::swap(u, v);
  while (!v.is_zero()) {
    if (v.degree() == 0) return ZPoly(1);
    ZPoly r = pseudo_rem(u, v);
    u = std::move(v);
    v = r.primitive_part();
  }
  return u.primitive_part();
}

// Heuristic gcd: evaluate at a large integer, take the integer gcd and read
// the digits back. Accepted only when the candidate divides both inputs.
std::optional<ZPoly> gcd_heuristic(const ZPoly& u, const ZPoly& v) {
  Integer xi = 2 * std::min(u.norm_inf(), v.norm_inf()) + 29;
  const long maxdeg = std::max(u.degree(), v.degree());
  for (int attempt = 0; attempt < 6; ++attempt) {
    if (static_cast<long>(mpz_sizeinbase(xi.get_mpz_t(), 2)) * maxdeg > 4000000) return std::nullopt;
    Integer g;
    Integer ua = u.eval(xi), va = v.eval(xi);
    mpz_gcd(g.get_mpz_t(), ua.get_mpz_t(), va.get_mpz_t());
    ZPoly cand = ZPoly::from_balanced_digits(g, xi).primitive_part();
    if (!cand.is_zero() && u.try_divide(cand) && v.try_divide(cand)) return cand;
    xi = xi * 73794 / 27011;
  }
  return std::nullopt;
}

}  // namespace

ZPoly gcd(const ZPoly& a, const ZPoly& b) {
  if (a.is_zero() && b.is_zero()) return {};
  if (a.is_zero()) return b.primitive_part() * b.content();
  if (b.is_zero()) return a.primitive_part() * a.content();
  Integer cg;
  Integer ca = a.content(), cb = b.content();
  mpz_gcd(cg.get_mpz_t(), ca.get_mpz_t(), cb.get_mpz_t());
  ZPoly u = a.primitive_part(), v = b.primitive_part();
  if (u.degree() == 0 || v.degree() == 0) return ZPoly(1) * cg;
  if (u == v) return u * cg;
  auto h = gcd_heuristic(u, v);
  ZPoly g = h ? *std::move(h) : gcd_prs(std::move(u), std::move(v));
  return g * cg;
}

std::uint64_t euler_phi(std::uint64_t n) {
  std::uint64_t result = n;
  for (std::uint64_t p = 2; p * p <= n; ++p) {
    if (n % p == 0) {
      while (n % p == 0) n /= p;
      result -= result / p;
    }
  }
  if (n > 1) result -= result / n;
  return result;
}

ZPoly cyclotomic_polynomial(std::uint64_t n) {
  if (n == 0) throw InvalidArgument("cyclotomic polynomial of order 0");
  // q^n - 1 = prod_{d | n} Phi_d(q)
  ZPoly r = ZPoly::monomial(1, n) - ZPoly(1);
  for (std::uint64_t d = 1; d < n; ++d) {
    if (n % d == 0) r = r.divide_exact(cyclotomic_polynomial(d));
  }
  return r;
}

// ---------------------------------------------------------------- QPoly

QPoly::QPoly(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { trim(); }

QPoly::QPoly(const ZPoly& z) {
  c_.reserve(z.coeffs().size());
  for (const auto& x : z.coeffs()) c_.emplace_back(x);
}

QPoly::QPoly(long c) {
  if (c != 0) c_.emplace_back(c);
}

void QPoly::trim() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

QPoly QPoly::operator-() const {
  QPoly r = *this;
  for (auto& x : r.c_) x = -x;
  return r;
}

QPoly& QPoly::operator+=(const QPoly& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
  for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
  trim();
  return *this;
}

QPoly& QPoly::operator-=(const QPoly& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
  for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
  trim();
  return *this;
}

QPoly& QPoly::operator*=(const Rational& s) {
  if (s == 0) {
    c_.clear();
    return *this;
  }
  for (auto& x : c_) x *= s;
  return *this;
}

QPoly operator*(const QPoly& a, const QPoly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<Rational> out(a.c_.size() + b.c_.size() - 1);
  for (std::size_t i = 0; i < a.c_.size(); ++i) {
    if (a.c_[i] == 0) continue;
    for (std::size_t j = 0; j < b.c_.size(); ++j) out[i + j] += a.c_[i] * b.c_[j];
  }
  return QPoly(std::move(out));
}

std::pair<QPoly, QPoly> QPoly::divmod(const QPoly& d) const {
  if (d.is_zero()) throw ZeroInput("polynomial division by zero");
  if (degree() < d.degree()) return {QPoly{}, *this};
  std::vector<Rational> rem = c_;
  std::vector<Rational> quot(c_.size() - d.c_.size() + 1);
  Rational inv_lc = 1 / d.lead();
  for (std::size_t k = quot.size(); k-- > 0;) {
    Rational qk = rem[k + d.c_.size() - 1] * inv_lc;
    if (qk == 0) continue;
    for (std::size_t j = 0; j < d.c_.size(); ++j) rem[k + j] -= qk * d.c_[j];
    quot[k] = qk;
  }
  rem.resize(d.c_.size() - 1);
  return {QPoly(std::move(quot)), QPoly(std::move(rem))};
}

QPoly QPoly::monic() const {
  if (is_zero()) return *this;
  QPoly r = *this;
  Rational inv = 1 / lead();
  for (auto& x : r.c_) x *= inv;
  return r;
}

ZPoly QPoly::to_primitive_zpoly() const {
  if (is_zero()) return {};
  Integer l = 1;
  for (const auto& x : c_) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.get_den_mpz_t());
  std::vector<Integer> out;
  out.reserve(c_.size());
  for (const auto& x : c_) out.emplace_back(x.get_num() * (l / x.get_den()));
  return ZPoly(std::move(out)).primitive_part();
}

QPoly gcd(const QPoly& a, const QPoly& b) {
  QPoly u = a, v = b;
  while (!v.is_zero()) {
    QPoly r = u.divmod(v).second;
    u = std::move(v);
    v = std::move(r);
  }
  return u.monic();
}

QPolyXgcd xgcd(const QPoly& a, const QPoly& b) {
  QPoly r0 = a, r1 = b, s0 = 1, s1 = 0, t0 = 0, t1 = 1;
  while (!r1.is_zero()) {
    auto [q, r] = r0.divmod(r1);
    r0 = std::move(r1);
    r1 = std::move(r);
    QPoly s2 = s0 - q * s1;
    s0 = std::move(s1);
    s1 = std::move(s2);
    QPoly t2 = t0 - q * t1;
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  if (r0.is_zero()) return {r0, s0, t0};
  Rational inv = 1 / r0.lead();
  return {r0 * inv, s0 * inv, t0 * inv};
}

}  // namespace quasinv
