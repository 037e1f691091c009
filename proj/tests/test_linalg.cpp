#include <doctest.h>

#include <algorithm>
#include <random>

#include "quasinv/linalg.hpp"

using namespace quasinv;

namespace {

template <class F>
std::vector<SparseRow<F>> random_rows(const F& f, std::size_t nrows, std::size_t ncols, std::mt19937_64& rng) {
  std::vector<SparseRow<F>> rows;
  for (std::size_t r = 0; r < nrows; ++r) {
    SparseRow<F> row;
    for (std::size_t c = 0; c < ncols; ++c) {
      if (rng() % 2) row.emplace_back(static_cast<std::uint32_t>(c), f.from_int(static_cast<long>(rng() % 7) - 3));
    }
    row.erase(std::remove_if(row.begin(), row.end(), [&](const auto& e) { return f.is_zero(e.second); }), row.end());
    if (!row.empty()) rows.push_back(row);
  }
  return rows;
}

template <class F>
typename F::Elem dot(const F& f, const SparseRow<F>& row, const std::vector<typename F::Elem>& v) {
  auto acc = f.zero();
  for (const auto& [c, e] : row) acc = f.add(acc, f.mul(e, v[c]));
  return acc;
}

}  // namespace

TEST_CASE("nullspace basis annihilates and has the right size") {
  RationalField f;
  std::mt19937_64 rng(21);
  for (int t = 0; t < 20; ++t) {
    const std::size_t ncols = 4 + rng() % 8, nrows = 1 + rng() % 8;
    const auto rows = random_rows(f, nrows, ncols, rng);
    const auto ns = nullspace(f, ncols, rows);
    std::vector<std::vector<Rational>> dense;
    for (const auto& r : rows) {
      std::vector<Rational> v(ncols, 0);
      for (const auto& [c, e] : r) v[c] = e;
      dense.push_back(v);
    }
    CHECK(ns.basis.size() + rank_of(f, dense, ncols) == ncols);
    for (const auto& v : ns.basis) {
      for (const auto& r : rows) CHECK(dot(f, r, v) == 0);
    }
  }
}

TEST_CASE("nullspace over Q(q)") {
  FormalQField f;
  // rows (1, -q, 0), (0, 1, -q^2): kernel spanned by (q^3, q^2, 1)
  std::vector<SparseRow<FormalQField>> rows(2);
  rows[0] = {{0, f.one()}, {1, f.neg(f.q_power(1))}};
  rows[1] = {{1, f.one()}, {2, f.neg(f.q_power(2))}};
  const auto ns = nullspace(f, 3, rows);
  REQUIRE(ns.basis.size() == 1);
  const auto& v = ns.basis[0];
  for (const auto& r : rows) CHECK(f.is_zero(dot(f, r, v)));
  CHECK(f.eq(f.mul(v[2], f.q_power(3)), f.mul(v[0], f.one())));
}

TEST_CASE("rank over F_p") {
  PrimeField f(5);
  std::vector<std::vector<std::uint64_t>> vs{{1, 2, 3}, {2, 4, 2}};
  CHECK(rank_of(f, vs, 3) == 2);
  // dependent mod 5 only
  vs[1] = {2, 4, 6 % 5};
  CHECK(rank_of(f, vs, 3) == 1);
}
