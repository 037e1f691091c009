#include <doctest.h>

#include <random>

#include "quasinv/errors.hpp"
#include "quasinv/poly.hpp"

using namespace quasinv;

namespace {

template <class F>
Poly<F> random_poly(const F& f, int n, int deg, std::mt19937_64& rng) {
  Poly<F> out(f, n);
  for (int d = 0; d <= deg; ++d) {
    for (MonoKey k : mono::of_degree(n, d)) {
      if (rng() % 3 == 0) {
        out += Poly<F>::monomial(f, n, k, f.from_int(static_cast<long>(rng() % 11) - 5));
      }
    }
  }
  return out;
}

template <class F>
void discriminant_identity(const F& f) {
  const auto [p2, p3] = elementary_invariants(f);
  const auto v = vandermonde(f, 3);
  CHECK(p2.pow(3) - p3.pow(2).scale(f.from_int(2)) == (v * v).scale(f.from_int(54)));
}

}  // namespace

TEST_CASE("P2^3 - 2 P3^2 = 54 times the discriminant") {
  discriminant_identity(RationalField{});
  discriminant_identity(PrimeField(5));
  discriminant_identity(PrimeField(7));
  discriminant_identity(PrimeField(11));
}

TEST_CASE("ring laws on random polynomials") {
  RationalField f;
  std::mt19937_64 rng(11);
  for (int t = 0; t < 10; ++t) {
    const auto a = random_poly(f, 3, 3, rng), b = random_poly(f, 3, 3, rng), c = random_poly(f, 3, 2, rng);
    CHECK(a * (b + c) == a * b + a * c);
    CHECK(a * b == b * a);
    CHECK((a - a).is_zero());
    // derivative is a derivation
    CHECK(derivative(a * b, 1) == derivative(a, 1) * b + a * derivative(b, 1));
  }
}

TEST_CASE("permutations act as a group") {
  RationalField f;
  std::mt19937_64 rng(5);
  const auto p = random_poly(f, 3, 4, rng);
  const auto perms = all_permutations(3);
  CHECK(perms.size() == 6);
  for (const auto& g : perms) {
    for (const auto& h : perms) {
      std::vector<int> gh(3);
      for (int i = 0; i < 3; ++i) gh[static_cast<std::size_t>(i)] = g[static_cast<std::size_t>(h[static_cast<std::size_t>(i)])];
      // either composition order is a group action; check one consistent rule
      const bool left = permute(gh, p) == permute(g, permute(h, p));
      const bool right = permute(gh, p) == permute(h, permute(g, p));
      CHECK((left || right));
    }
  }
  CHECK(swap_vars(swap_vars(p, 0, 2), 0, 2) == p);
}

TEST_CASE("divisibility order along x_i = x_j") {
  RationalField f;
  auto x = [&](int i) { return Poly<RationalField>::variable(f, 3, i); };
  const auto p = (x(0) - x(1)).pow(5) * (x(0) + x(2) * x(2));
  CHECK(divisibility_order(p, 0, 1) == std::optional<int>(5));
  CHECK(divisibility_order(p, 0, 2) == std::optional<int>(0));
  CHECK_FALSE(divisibility_order(Poly<RationalField>(f, 3), 0, 1).has_value());
  const auto q = divide_by_linear_exact(p, 0, 1, f.one());
  CHECK(q * (x(0) - x(1)) == p);
  CHECK_THROWS_AS(divide_by_linear_exact(x(0) + x(1), 0, 1, f.one()), DenominatorResidue);
}

TEST_CASE("quasi-invariance of the sign generator") {
  RationalField f;
  auto x = [&](int i) { return Poly<RationalField>::variable(f, 3, i); };
  for (int m = 0; m <= 3; ++m) {
    Poly<RationalField> s = Poly<RationalField>::constant(f, 3, f.one());
    for (int i = 0; i < 3; ++i) {
      for (int j = i + 1; j < 3; ++j) s *= (x(i) - x(j)).pow(static_cast<unsigned>(2 * m + 1));
    }
    CHECK(is_quasi_invariant(s, m));
    CHECK(is_quasi_invariant(s, m + 1) == false);
  }
  // x1 is in Q_0 only
  CHECK(is_quasi_invariant(x(0), 0));
  CHECK_FALSE(is_quasi_invariant(x(0), 1));
}

TEST_CASE("cube roots factor x1^3 - x2^3") {
  CyclotomicField c(3);
  using P = Poly<CyclotomicField>;
  auto x = [&](int i) { return P::variable(c, 3, i); };
  const P prod = (x(0) - x(1)) * (x(0) - x(1).scale(c.q_power(1))) * (x(0) - x(1).scale(c.q_power(2)));
  CHECK(prod == x(0).pow(3) - x(1).pow(3));
  CHECK(q_divisibility_test(x(0).pow(3) - x(1).pow(3), 0, 1, 1));
  CHECK_FALSE(q_divisibility_test(x(0).pow(2) - x(1).pow(2), 0, 1, 1));
}

TEST_CASE("isotypic projections decompose") {
  RationalField f;
  std::mt19937_64 rng(9);
  for (int t = 0; t < 5; ++t) {
    const auto p = random_poly(f, 3, 4, rng);
    const auto tr = isotypic_project(p, IsotypicLabel::Triv);
    const auto sg = isotypic_project(p, IsotypicLabel::Sign);
    const auto st = isotypic_project(p, IsotypicLabel::Std);
    CHECK(tr + sg + st == p);
    CHECK(isotypic_project(tr, IsotypicLabel::Triv) == tr);
    CHECK(isotypic_project(st, IsotypicLabel::Std) == st);
    CHECK(isotypic_project(sg, IsotypicLabel::Triv).is_zero());
    CHECK(swap_vars(tr, 0, 1) == tr);
    CHECK(swap_vars(sg, 0, 1) == -sg);
  }
  CHECK_THROWS_AS(isotypic_project(Poly<PrimeField>::variable(PrimeField(3), 3, 0), IsotypicLabel::Triv),
                  BadCharacteristic);
}

TEST_CASE("translation split") {
  RationalField f;
  auto x = [&](int i) { return Poly<RationalField>::variable(f, 3, i); };
  const auto p = (x(0) - x(2)) * (x(1) - x(2)) + (x(0) + x(1) + x(2)) * x(0);
  const auto s = translation_split(p);
  CHECK(s.divisible + s.reduced == p);
  CHECK(translation_split((x(0) + x(1) + x(2)) * x(0)).reduced.is_zero());
  CHECK(translation_split(x(0) - x(2)).divisible.is_zero());
}

TEST_CASE("monomial keys") {
  const MonoKey k = mono::make({2, 0, 3});
  CHECK(mono::degree(k) == 5);
  CHECK(mono::exponents(k, 3) == std::vector<int>{2, 0, 3});
  CHECK(mono::of_degree(3, 4).size() == 15);
  CHECK(mono::mul(k, mono::var(1)) == mono::make({2, 1, 3}));
}
