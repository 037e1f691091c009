#include <doctest.h>

#include <random>

#include "quasinv/coeffs.hpp"
#include "quasinv/errors.hpp"

using namespace quasinv;

namespace {

template <class F>
void field_axioms(const F& f, const std::vector<typename F::Elem>& xs) {
  for (const auto& a : xs) {
    CHECK(f.eq(f.add(a, f.zero()), a));
    CHECK(f.eq(f.mul(a, f.one()), a));
    CHECK(f.is_zero(f.add(a, f.neg(a))));
    if (!f.is_zero(a)) CHECK(f.eq(f.mul(a, f.inv(a)), f.one()));
    for (const auto& b : xs) {
      CHECK(f.eq(f.mul(a, b), f.mul(b, a)));
      for (const auto& c : xs) CHECK(f.eq(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c))));
    }
  }
}

}  // namespace

TEST_CASE("domain specs") {
  for (const auto& s : {DomainSpec::rational(), DomainSpec::prime_field(7), DomainSpec::cyclotomic(6),
                        DomainSpec::formal_q()}) {
    CHECK(DomainSpec::parse(s.name()) == s);
  }
  CHECK(DomainSpec::parse("cyclotomic(3)") == DomainSpec::cyclotomic(3));
  CHECK_THROWS_AS(DomainSpec::prime_field(4).validate(), InvalidDomain);
  CHECK_THROWS_AS(DomainSpec::cyclotomic(1).validate(), InvalidDomain);
  CHECK_THROWS_AS(DomainSpec::parse("Quaternions"), InvalidArgument);
}

TEST_CASE("field axioms on sample elements") {
  field_axioms(RationalField{}, {Rational(0), Rational(1), Rational(-3, 4), Rational(22, 7)});
  PrimeField f7(7);
  field_axioms(f7, {0, 1, 3, 6});
  CyclotomicField c5(5);
  field_axioms(c5, {c5.zero(), c5.one(), c5.q_power(1), c5.add(c5.q_power(2), c5.from_int(3)),
                    c5.from_rational(Rational(1, 2))});
  FormalQField fq;
  field_axioms(fq, {fq.zero(), fq.one(), fq.q_power(1), fq.q_power(-2),
                    fq.add(fq.q_power(1), fq.from_rational(Rational(2, 3)))});
}

TEST_CASE("roots of unity") {
  for (std::uint64_t p : {2, 3, 4, 5, 6, 12}) {
    CyclotomicField c(p);
    CHECK(c.eq(c.q_power(static_cast<long>(p)), c.one()));
    CHECK(c.eq(c.q_power(-1), c.inv(c.q_power(1))));
    if (p > 1) CHECK_FALSE(c.eq(c.q_power(1), c.one()));
  }
  CyclotomicField c3(3);
  // 1 + q + q^2 = 0
  CHECK(c3.is_zero(c3.add(c3.one(), c3.add(c3.q_power(1), c3.q_power(2)))));
}

TEST_CASE("specialization of q") {
  CyclotomicField c3(3);
  const RatFunc r(ZPoly(std::vector<Integer>{1, 1}), ZPoly(std::vector<Integer>{0, 1}));  // (1+q)/q
  // (1 + w)/w = -w^2/w = -w
  CHECK(c3.eq(specialize_q(r, c3), c3.neg(c3.q_power(1))));
  const RatFunc bad(ZPoly(1), cyclotomic_polynomial(3));
  CHECK_THROWS_AS(specialize_q(bad, c3), DenominatorVanishes);
}

TEST_CASE("modular images are ring maps") {
  FormalQField fq;
  const ModularImage h = modular_image_for(fq, 0);
  std::mt19937_64 rng(3);
  for (int t = 0; t < 20; ++t) {
    const RatFunc a(ZPoly(std::vector<Integer>{Integer(static_cast<long>(rng() % 9)) - 4, 1, 2}),
                    ZPoly(std::vector<Integer>{1, Integer(static_cast<long>(rng() % 5))}));
    const RatFunc b(ZPoly(std::vector<Integer>{3, Integer(static_cast<long>(rng() % 7))}));
    const auto ia = map_mod(fq, h, a), ib = map_mod(fq, h, b), iab = map_mod(fq, h, fq.mul(a, b));
    if (!ia || !ib) continue;
    REQUIRE(iab.has_value());
    CHECK(*iab == mul_mod(*ia, *ib, h.l));
  }
}
