#include <doctest.h>

#include "quasinv/coeffs.hpp"
#include "quasinv/upoly.hpp"

using namespace quasinv;

TEST_CASE("q^n - 1 is the product of Phi_d over d | n") {
  for (std::uint64_t n = 1; n <= 30; ++n) {
    ZPoly prod = 1;
    for (std::uint64_t d = 1; d <= n; ++d) {
      if (n % d == 0) prod = prod * cyclotomic_polynomial(d);
    }
    CHECK(prod == ZPoly::monomial(1, n) - ZPoly(1));
    CHECK(static_cast<std::uint64_t>(cyclotomic_polynomial(n).degree()) == euler_phi(n));
  }
  CHECK(cyclotomic_polynomial(6) == ZPoly(std::vector<Integer>{1, -1, 1}));
}

TEST_CASE("gcd in Z[q] keeps the content") {
  const ZPoly a = ZPoly(std::vector<Integer>{2, 2}) * cyclotomic_polynomial(3);  // 2(q+1)(q^2+q+1)
  const ZPoly b = ZPoly(std::vector<Integer>{4, -4}) * cyclotomic_polynomial(3);
  CHECK(gcd(a, b) == cyclotomic_polynomial(3) * Integer(2));
  CHECK(gcd(cyclotomic_polynomial(5), cyclotomic_polynomial(7)) == ZPoly(1));
}

TEST_CASE("exact division and q-power stripping") {
  const ZPoly p = cyclotomic_polynomial(4) * cyclotomic_polynomial(5);
  CHECK(p.try_divide(cyclotomic_polynomial(5)) == std::optional<ZPoly>(cyclotomic_polynomial(4)));
  CHECK_FALSE(p.try_divide(cyclotomic_polynomial(3)).has_value());
  const ZPoly s = ZPoly::monomial(3, 4) + ZPoly::monomial(6, 2);
  CHECK(s.low_order() == 2);
  CHECK(s.shift_down(2) == ZPoly(std::vector<Integer>{6, 0, 3}));
  CHECK(s.content() == 3);
}

TEST_CASE("rational functions normalize") {
  const RatFunc r(ZPoly(std::vector<Integer>{0, 2}), ZPoly(4));
  CHECK(r.num == ZPoly(std::vector<Integer>{0, 1}));
  CHECK(r.den == ZPoly(2));
  const RatFunc s(cyclotomic_polynomial(3) * ZPoly(std::vector<Integer>{1, 1}), -cyclotomic_polynomial(3));
  CHECK(s.num == ZPoly(std::vector<Integer>{-1, -1}));
  CHECK(s.den == ZPoly(1));
}

TEST_CASE("xgcd over Q") {
  const QPoly a(std::vector<Rational>{1, 0, 1});
  const QPoly b(std::vector<Rational>{1, 1});
  const auto g = xgcd(a, b);
  CHECK(g.g == QPoly(std::vector<Rational>{1}));
  CHECK(g.s * a + g.t * b == g.g);
}
