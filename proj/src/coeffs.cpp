#include "quasinv/coeffs.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace quasinv {

// ---------------------------------------------------------------- DomainSpec

std::string DomainSpec::name() const {
  switch (kind) {
    case DomainKind::Rational:
      return "Rational";
    case DomainKind::PrimeField:
      return "PrimeField(" + std::to_string(p) + ")";
    case DomainKind::Cyclotomic:
      return "Cyclotomic(" + std::to_string(p) + ")";
    case DomainKind::FormalQ:
      return "FormalQ";
  }
  return "?";
}

void DomainSpec::validate() const {
  switch (kind) {
    case DomainKind::PrimeField:
      if (!is_prime(p)) throw InvalidDomain("PrimeField requires a prime, got " + std::to_string(p));
      if (p >= (std::uint64_t{1} << 62)) throw InvalidDomain("PrimeField modulus must be below 2^62");
      break;
    case DomainKind::Cyclotomic:
      if (p < 2) throw InvalidDomain("Cyclotomic requires p >= 2, got " + std::to_string(p));
      if (p > 4096) throw InvalidDomain("Cyclotomic order too large: " + std::to_string(p));
      break;
    default:
      break;
  }
}

DomainSpec DomainSpec::parse(const std::string& text) {
  std::string t;
  for (char ch : text) {
    if (!std::isspace(static_cast<unsigned char>(ch))) t.push_back(static_cast<char>(std::tolower(ch)));
  }
  auto arg = [&](const std::string& prefix) -> std::uint64_t {
    if (t.size() < prefix.size() + 3 || t.back() != ')') throw InvalidDomain("cannot parse domain: " + text);
    std::string inner = t.substr(prefix.size() + 1, t.size() - prefix.size() - 2);
    if (inner.empty() || !std::all_of(inner.begin(), inner.end(), ::isdigit)) {
      throw InvalidDomain("cannot parse domain: " + text);
    }
    return std::stoull(inner);
  };
  DomainSpec s;
  if (t == "rational" || t == "q") {
    s = rational();
  } else if (t == "formalq" || t == "q(q)") {
    s = formal_q();
  } else if (t.rfind("primefield(", 0) == 0) {
    s = prime_field(arg("primefield"));
  } else if (t.rfind("cyclotomic(", 0) == 0) {
    s = cyclotomic(arg("cyclotomic"));
  } else {
    throw InvalidDomain("unknown domain: " + text);
  }
  s.validate();
  return s;
}

// ---------------------------------------------------------------- Q

Rational RationalField::inv(const Rational& a) const {
  if (a == 0) throw ZeroInput("inverse of zero");
  return 1 / a;
}

Rational RationalField::q_power(long) const { throw InvalidDomain("Rational has no parameter q"); }

// ---------------------------------------------------------------- F_p

PrimeField::PrimeField(std::uint64_t p) : p_(p) { DomainSpec::prime_field(p).validate(); }

std::uint64_t PrimeField::from_int(long v) const {
  if (v >= 0) return static_cast<std::uint64_t>(v) % p_;
  std::uint64_t r = static_cast<std::uint64_t>(-(v + 1)) % p_;  // avoids overflow at LONG_MIN
  return p_ - 1 - r;
}

std::uint64_t PrimeField::from_rational(const Rational& v) const {
  auto r = reduce_mod(v, p_);
  if (!r) throw DenominatorVanishes("denominator divisible by " + std::to_string(p_));
  return *r;
}

std::uint64_t PrimeField::q_power(long) const { throw InvalidDomain("PrimeField has no parameter q"); }

// ---------------------------------------------------------------- Q[q]/Phi_p

CyclotomicField::CyclotomicField(std::uint64_t p) {
  DomainSpec::cyclotomic(p).validate();
  ZPoly phi = cyclotomic_polynomial(p);
  st_ = std::make_shared<const State>(State{p, phi, QPoly(phi)});
}

QPoly CyclotomicField::reduce(const QPoly& a) const {
  const int dp = st_->phi.degree();
  if (a.degree() < dp) return a;
  // Phi is monic with integer coefficients: eliminate from the top.
  std::vector<Rational> c = a.coeffs();
  const auto& phi = st_->phi.coeffs();
  for (int k = static_cast<int>(c.size()) - 1; k >= dp; --k) {
    const Rational top = c[static_cast<std::size_t>(k)];
    if (top == 0) continue;
    for (int j = 0; j <= dp; ++j) {
      c[static_cast<std::size_t>(k - dp + j)] -= top * phi[static_cast<std::size_t>(j)];
    }
  }
  c.resize(static_cast<std::size_t>(dp));
  return QPoly(std::move(c));
}

QPoly CyclotomicField::inv(const QPoly& a) const {
  if (a.is_zero()) throw ZeroInput("inverse of zero");
  auto [g, s, t] = xgcd(a, st_->phi_q);
  if (g.degree() != 0) throw ConsistencyError("cyclotomic element not invertible");
  return reduce(s);
}

QPoly CyclotomicField::q_power(long k) const {
  const auto p = static_cast<long>(st_->p);
  long e = ((k % p) + p) % p;
  return reduce(QPoly(ZPoly::monomial(1, static_cast<std::size_t>(e))));
}

std::string CyclotomicField::to_string(const QPoly& a) const {
  if (a.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = a.coeffs().size(); i-- > 0;) {
    const Rational& c = a.coeffs()[i];
    if (c == 0) continue;
    Rational mag = abs(c);
    if (!first) os << (c < 0 ? " - " : " + ");
    else if (c < 0) os << "-";
    first = false;
    if (i == 0 || mag != 1) {
      os << mag.get_str();
      if (i > 0) os << "*";
    }
    if (i >= 1) os << "q";
    if (i >= 2) os << "^" << i;
  }
  return os.str();
}

json CyclotomicField::to_json(const QPoly& a) const {
  json arr = json::array();
  for (const auto& c : a.coeffs()) arr.push_back(c.get_str());
  return arr;
}

// ---------------------------------------------------------------- Q(q)

RatFunc::RatFunc(ZPoly n, ZPoly d) {
  if (d.is_zero()) throw ZeroInput("rational function with zero denominator");
  if (n.is_zero()) {
    num = ZPoly();
    den = ZPoly(1);
    return;
  }
  ZPoly g = gcd(n, d);
  if (!(g == ZPoly(1))) {
    n = n.divide_exact(g);
    d = d.divide_exact(g);
  }
  if (d.lead() < 0) {
    n = -n;
    d = -d;
  }
  num = std::move(n);
  den = std::move(d);
}

std::string RatFunc::to_string() const {
  if (den == ZPoly(1)) return num.to_string();
  return "(" + num.to_string() + ")/(" + den.to_string() + ")";
}

RatFunc FormalQField::from_rational(const Rational& v) const {
  return RatFunc(ZPoly(std::vector<Integer>{v.get_num()}), ZPoly(std::vector<Integer>{v.get_den()}));
}

RatFunc FormalQField::add(const RatFunc& a, const RatFunc& b) const {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  if (a.den == b.den) return RatFunc(a.num + b.num, a.den);
  return RatFunc(a.num * b.den + b.num * a.den, a.den * b.den);
}

RatFunc FormalQField::sub(const RatFunc& a, const RatFunc& b) const { return add(a, neg(b)); }

RatFunc FormalQField::mul(const RatFunc& a, const RatFunc& b) const {
  if (a.is_zero() || b.is_zero()) return {};
  return RatFunc(a.num * b.num, a.den * b.den);
}

RatFunc FormalQField::neg(const RatFunc& a) const {
  RatFunc r = a;
  r.num = -r.num;
  return r;
}

RatFunc FormalQField::inv(const RatFunc& a) const {
  if (a.is_zero()) throw ZeroInput("inverse of zero");
  return RatFunc(a.den, a.num);
}

RatFunc FormalQField::q_power(long k) const {
  if (k >= 0) return RatFunc(ZPoly::monomial(1, static_cast<std::size_t>(k)));
  return RatFunc(ZPoly(1), ZPoly::monomial(1, static_cast<std::size_t>(-k)));
}

json FormalQField::to_json(const RatFunc& a) const {
  auto arr = [](const ZPoly& z) {
    json out = json::array();
    for (const auto& c : z.coeffs()) out.push_back(c.get_str());
    return out;
  };
  return json{{"num", arr(a.num)}, {"den", arr(a.den)}};
}

// ---------------------------------------------------------------- factories

CoefficientDomain make_domain(const DomainSpec& spec) {
  spec.validate();
  switch (spec.kind) {
    case DomainKind::Rational:
      return RationalField{};
    case DomainKind::PrimeField:
      return PrimeField(spec.p);
    case DomainKind::Cyclotomic:
      return CyclotomicField(spec.p);
    case DomainKind::FormalQ:
      return FormalQField{};
  }
  throw InvalidDomain("unknown domain kind");
}

QPoly specialize_q(const RatFunc& x, const CyclotomicField& target) {
  QPoly den = target.reduce(QPoly(x.den));
  if (den.is_zero()) {
    throw DenominatorVanishes("denominator " + x.den.to_string() + " vanishes at a primitive " +
                              std::to_string(target.order()) + "-th root of unity");
  }
  QPoly num = target.reduce(QPoly(x.num));
  return target.mul(num, target.inv(den));
}

Rational rational_from_json(const json& j) {
  Rational r(j.get<std::string>());
  r.canonicalize();
  return r;
}

// ---------------------------------------------------------------- modular images

std::uint64_t select_prime(std::uint64_t congruent_one_mod, unsigned skip) {
  const std::uint64_t m = std::max<std::uint64_t>(congruent_one_mod, 1);
  const std::uint64_t step = m % 2 == 0 ? m : 2 * m;  // c = 1 mod step keeps c odd
  const std::uint64_t top = std::uint64_t{1} << 61;
  std::uint64_t c = (top / step) * step + 1;
  if (c > top) c -= step;
  for (;; c -= step) {
    if (is_prime(c)) {
      if (skip == 0) return c;
      --skip;
    }
  }
}

ModularImage modular_image_for(const RationalField&, unsigned attempt) { return {select_prime(1, attempt), 0}; }

ModularImage modular_image_for(const PrimeField& f, unsigned) { return {f.modulus(), 0}; }

ModularImage modular_image_for(const CyclotomicField& f, unsigned attempt) {
  const std::uint64_t p = f.order();
  const std::uint64_t l = select_prime(p, attempt);
  std::vector<std::uint64_t> prime_divisors;
  for (std::uint64_t r = 2, rest = p; r <= rest; ++r) {
    if (rest % r == 0) {
      prime_divisors.push_back(r);
      while (rest % r == 0) rest /= r;
    }
  }
  for (std::uint64_t h = 2;; ++h) {
    std::uint64_t z = pow_mod(h, (l - 1) / p, l);
    bool primitive = true;
    for (std::uint64_t r : prime_divisors) {
      if (pow_mod(z, p / r, l) == 1) primitive = false;
    }
    if (primitive) return {l, z};
  }
}

ModularImage modular_image_for(const FormalQField&, unsigned attempt) {
  const std::uint64_t l = select_prime(1, attempt);
  return {l, (0x9E3779B97F4A7C15ULL + 0x632BE59BD9B4E019ULL * attempt) % l};
}

std::optional<std::uint64_t> map_mod(const RationalField&, const ModularImage& h, const Rational& a) {
  return reduce_mod(a, h.l);
}

std::optional<std::uint64_t> map_mod(const PrimeField&, const ModularImage&, std::uint64_t a) { return a; }

std::optional<std::uint64_t> map_mod(const CyclotomicField&, const ModularImage& h, const QPoly& a) {
  std::uint64_t r = 0;
  for (std::size_t i = a.coeffs().size(); i-- > 0;) {
    auto c = reduce_mod(a.coeffs()[i], h.l);
    if (!c) return std::nullopt;
    r = add_mod(mul_mod(r, h.q_img, h.l), *c, h.l);
  }
  return r;
}

std::optional<std::uint64_t> map_mod(const FormalQField&, const ModularImage& h, const RatFunc& a) {
  std::uint64_t d = a.den.eval_mod(h.q_img, h.l);
  if (d == 0) return std::nullopt;
  return mul_mod(a.num.eval_mod(h.q_img, h.l), inv_mod(d, h.l), h.l);
}

}  // namespace quasinv
