#include <doctest.h>

#include "quasinv/errors.hpp"
#include "quasinv/qdeform.hpp"
#include "quasinv/quasi.hpp"

using namespace quasinv;

namespace {

ZPoly phi(std::uint64_t d) { return cyclotomic_polynomial(d); }

}  // namespace

TEST_CASE("range of deforming orders") {
  CHECK(thm56_range(3, 0).first > thm56_range(3, 0).second);
  CHECK(thm56_range(3, 1) == std::make_pair(3, 3));
  CHECK(thm56_range(3, 2) == std::make_pair(5, 6));
  CHECK(thm56_range(3, 3) == std::make_pair(6, 9));
  CHECK(thm56_range(3, 4) == std::make_pair(8, 12));
  CHECK(thm56_range(2, 3).first > thm56_range(2, 3).second);
}

TEST_CASE("wedge polynomials for m <= 3") {
  CHECK(q_wedge_polynomial(0).c == ZPoly(1));
  CHECK(q_wedge_polynomial(1).c == phi(3));
  CHECK(q_wedge_polynomial(2).c == phi(5) * phi(6));
  const QWedge w3 = q_wedge_polynomial(3);
  CHECK(w3.c == phi(6) * phi(7) * phi(8) * phi(9));
  CHECK_FALSE(w3.non_cyclotomic());
  CHECK(w3.excluded() == std::vector<std::uint64_t>{6, 7, 8, 9});
}

TEST_CASE("cyclotomic factor search") {
  const auto [fs, rest] = cyclotomic_factors(phi(3) * phi(3) * phi(10) * ZPoly(std::vector<Integer>{1, 0, 2}));
  CHECK(fs == std::vector<std::pair<std::uint64_t, int>>{{3, 2}, {10, 1}});
  CHECK(rest == ZPoly(std::vector<Integer>{1, 0, 2}));
}

TEST_CASE("P_{m,q} construction") {
  const PmqElement a = construct_pmq(3, 1, 3);
  CHECK(a.kind == PmqCase::LargeP);
  CHECK(a.degree == 3);
  CyclotomicField c3(3);
  using P = Poly<CyclotomicField>;
  CHECK(a.poly == P::variable(c3, 3, 0).pow(3) - P::variable(c3, 3, 1).pow(3));
  CHECK(construct_pmq(3, 2, 5).degree == 5);
  CHECK(construct_pmq(3, 2, 6).kind == PmqCase::LargeP);
  const PmqElement e = construct_pmq(3, 4, 8);
  CHECK(e.kind == PmqCase::EvenSmallP);
  CHECK(e.degree == 8 + 3 * (9 - 8));
  const PmqElement o = construct_pmq(3, 5, 9);
  CHECK(o.kind == PmqCase::OddSmallP);
  CHECK(o.degree == 9 + 3 * (11 - 9));
  CHECK_THROWS_AS(construct_pmq(3, 1, 5), RangeViolation);
  CHECK_THROWS_AS(construct_pmq(3, 0, 2), RangeViolation);
}

TEST_CASE("flatness at roots of unity") {
  const QDeformationReport r = flatness_check(3, 1, 3, 9);
  CHECK_FALSE(r.agreement);
  CHECK(r.first_difference == std::optional<int>(3));
  CHECK(r.dims_cyclotomic[3] == 5);
  CHECK(r.dims_expected[3] == 3);
  CHECK(r.flat_values_excluded == std::vector<std::uint64_t>{3});
  CHECK(r.dominance);
  CHECK(r.conjecture_holds);
  REQUIRE(r.pmq.has_value());
  CHECK(r.pmq->degree == 3);

  const QDeformationReport s = flatness_check(3, 1, 7);
  CHECK(s.agreement);
  CHECK(s.dominance);
  CHECK_FALSE(s.dims_prime.empty());

  CHECK(flatness_check(3, 0, 5).agreement);
}

TEST_CASE("n = 2 does not depend on q") {
  for (int m = 0; m <= 3; ++m) {
    for (std::uint64_t p : {3, 5}) {
      const QDeformationReport r = flatness_check(2, m, p);
      CHECK(r.agreement);
      CHECK(r.dims_formal == r.dims_expected);
    }
  }
}

TEST_CASE("minimal Std generator") {
  CHECK(minimal_qstd_generator(1, 3).total_degree() == 3);
  CHECK(minimal_qstd_generator(2, 5).total_degree() == 5);
  CHECK_THROWS_AS(minimal_qstd_generator(0, 3), RangeViolation);
}

TEST_CASE("integral primitive form") {
  FormalQField f;
  using P = Poly<FormalQField>;
  const P x = P::variable(f, 3, 0), y = P::variable(f, 3, 1);
  const P p = x.scale(f.inv(f.q_power(1))) + y.scale(RatFunc(ZPoly(2), ZPoly(std::vector<Integer>{1, 1})));
  const P ip = integral_primitive(p);
  for (const auto& [k, c] : ip.terms()) CHECK(c.den == ZPoly(1));
  // proportional to p
  const auto r = f.mul(ip.lead().second, f.inv(p.coeff(ip.lead().first)));
  CHECK(p.scale(r) == ip);
}
