#include <doctest.h>

#include <random>

#include "quasinv/errors.hpp"
#include "quasinv/quasi.hpp"
#include "quasinv/shift.hpp"

using namespace quasinv;

namespace {

using QP = Poly<RationalField>;

std::vector<QP> symmetric_up_to(int deg) {
  RationalField f;
  const auto [p2, p3] = elementary_invariants(f);
  const QP e1 = QP::variable(f, 3, 0) + QP::variable(f, 3, 1) + QP::variable(f, 3, 2);
  std::vector<QP> out;
  for (int a = 0; a <= deg; ++a) {
    for (int b = 0; a + 2 * b <= deg; ++b) {
      for (int c = 0; a + 2 * b + 3 * c <= deg; ++c) {
        out.push_back(e1.pow(static_cast<unsigned>(a)) * p2.pow(static_cast<unsigned>(b)) *
                      p3.pow(static_cast<unsigned>(c)));
      }
    }
  }
  return out;
}

std::vector<GeneratorChain> chain_to(int m) {
  std::vector<GeneratorChain> out{initial_chain()};
  while (out.back().m < m) out.push_back(lift_chain(out.back()));
  return out;
}

}  // namespace

TEST_CASE("constant term") {
  RationalField f;
  const QP one = QP::constant(f, 3, f.one());
  CHECK(opdam_apply(1, one) == QP::constant(f, 3, Rational(-12)));
  for (int m = 0; m <= 5; ++m) {
    const long c = 6L * (1 - 2 * m) * (1 - 3 * m) * (2 - 3 * m);
    CHECK(opdam_apply(m, one) == QP::constant(f, 3, Rational(c)));
  }
}

TEST_CASE("explicit operator matches the Dunkl composition on symmetric polynomials") {
  const auto syms = symmetric_up_to(6);
  for (int m = 1; m <= 2; ++m) {
    for (const auto& s : syms) CHECK(opdam_apply(m, s) == opdam_dunkl_oracle(m, s));
  }
}

TEST_CASE("Dunkl operators commute") {
  RationalField f;
  const auto b = quasi_basis(f, 3, 1, 4, false);
  const Rational k(2);
  for (const auto& p : b.basis) {
    CHECK(dunkl(dunkl(p, 0, k), 1, k) == dunkl(dunkl(p, 1, k), 0, k));
  }
}

TEST_CASE("shift maps Q_{m-1} into Q_m and preserves degree") {
  RationalField f;
  for (int m = 1; m <= 2; ++m) {
    for (int d = 0; d <= 3 * m + 2; ++d) {
      for (const auto& p : quasi_basis(f, 3, m - 1, d, false).basis) {
        const QP img = opdam_apply(m, p);
        CHECK(is_quasi_invariant(img, m));
        CHECK((img.is_zero() || img.homogeneous_degree() == std::optional<int>(d)));
      }
    }
  }
}

TEST_CASE("shift commutes with permutations") {
  RationalField f;
  std::mt19937_64 rng(4);
  const auto b = quasi_basis(f, 3, 1, 5, false);
  for (int t = 0; t < 4; ++t) {
    QP p(f, 3);
    for (const auto& v : b.basis) p += v.scale(Rational(static_cast<long>(rng() % 7) - 3));
    for (const auto& g : all_permutations(3)) CHECK(opdam_apply(2, permute(g, p)) == permute(g, opdam_apply(2, p)));
  }
}

TEST_CASE("non-quasi-invariant input leaves a residue") {
  RationalField f;
  const QP x1 = QP::variable(f, 3, 0);
  CHECK_THROWS_AS(opdam_apply(2, x1.pow(3)), DenominatorResidue);
}

TEST_CASE("frozen scalars") {
  const auto chain = chain_to(7);
  const std::vector<std::array<long, 4>> expected{{54, 54, -36, -72},       {0, 324, -108, -432},
                                                  {-540, 0, -180, -144},    {-54, -1890, -180, -504},
                                                  {-6804, -162, -216, -1512}, {-324, -1944, -216, -432},
                                                  {-5940, -108, -396, -144}};
  for (int m = 0; m <= 6; ++m) {
    const ScalarEntry s = scalar_chain(chain[static_cast<std::size_t>(m)], chain[static_cast<std::size_t>(m + 1)]);
    const auto& e = expected[static_cast<std::size_t>(m)];
    CHECK(s.a == e[0]);
    CHECK(s.b == e[1]);
    CHECK(s.d == e[2]);
    CHECK(s.e == e[3]);
  }
  CHECK_THROWS_AS(scalar_chain(chain[0], chain[2]), InvalidArgument);
}

TEST_CASE("valuations") {
  CHECK(valuation_profile(Rational(50), 5) == 2);
  CHECK(valuation_profile(Rational(3, 49), 7) == -2);
  CHECK_THROWS_AS(valuation_profile(Rational(0), 5), ZeroInput);
  const auto chain = chain_to(5);
  CHECK(valuation_profile(Rational(chain[5].c), 11) >= 1);
}

TEST_CASE("congruence predicates") {
  // a: m = 1, 2 mod 5 at k = 1
  CHECK(congruence_predicate(6, 5, ScalarKind::A) == std::optional<int>(1));
  CHECK(congruence_predicate(7, 5, ScalarKind::A) == std::optional<int>(1));
  CHECK(congruence_predicate(8, 5, ScalarKind::A) == std::optional<int>(0));
  CHECK_FALSE(congruence_predicate(1, 5, ScalarKind::A).has_value());
  CHECK_FALSE(congruence_predicate(2, 7, ScalarKind::B).has_value());
  // d at p = 5: residues 2 and 3
  CHECK(congruence_predicate(2, 5, ScalarKind::D) == std::optional<int>(1));
  CHECK(congruence_predicate(3, 5, ScalarKind::D) == std::optional<int>(1));
  CHECK(congruence_predicate(4, 5, ScalarKind::D) == std::optional<int>(0));
  // e is gated off at p = 5, k = 1
  for (int m = 0; m < 5; ++m) CHECK(congruence_predicate(m, 5, ScalarKind::E) == std::optional<int>(0));
  // p^k beyond 3m + 3 never counts
  CHECK(congruence_predicate(0, 5, ScalarKind::D) == std::optional<int>(0));
  CHECK(congruence_predicate(15, 5, ScalarKind::B) == std::optional<int>(1));  // k = 2: 15 = 2*8 - 1 mod 25
  CHECK_THROWS_AS(congruence_predicate(3, 3, ScalarKind::A), BadCharacteristic);
}

TEST_CASE("valuations against congruences for m <= 20") {
  const ShiftReport r = shift_verify(20, {5, 7, 11, 13}, 2);
  CHECK(r.relations_hold());
  CHECK(r.consistency);
  for (const auto& f : r.findings) CHECK(f.which == ScalarKind::B);
  // the stated b residues miss for p = 2 mod 3; the observed form has no misses
  CHECK_FALSE(r.findings.empty());
  CHECK(r.observed_findings.empty());
  const json j = r.to_json();
  CHECK(j["schema"] == 1);
  CHECK(j["levels"].size() == 21);
}

TEST_CASE("relations at m = 0") {
  const auto chain = chain_to(1);
  const ScalarEntry s = scalar_chain(chain[0], chain[1]);
  const RelationReport r = relation_check(s, chain[0].c, chain[1].c);
  CHECK(r.ab_holds);
  CHECK(r.de_holds);
  CHECK(r.rhs_ab == r.lhs_ab);
}
