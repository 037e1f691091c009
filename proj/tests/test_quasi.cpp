#include <doctest.h>

#include <random>

#include "quasinv/errors.hpp"
#include "quasinv/quasi.hpp"

using namespace quasinv;

namespace {

// partitions of d into parts of sizes listed in `parts`
std::size_t count_partitions(int d, const std::vector<int>& parts) {
  std::vector<std::size_t> ways(static_cast<std::size_t>(d + 1), 0);
  ways[0] = 1;
  for (int p : parts) {
    for (int v = p; v <= d; ++v) ways[static_cast<std::size_t>(v)] += ways[static_cast<std::size_t>(v - p)];
  }
  return ways[static_cast<std::size_t>(d)];
}

// coefficients of sum_e c_e t^e / prod_{k=1}^{n} (1 - t^k) by counting
std::vector<std::size_t> expand(const std::vector<std::pair<int, long>>& num, int n, int d_max) {
  std::vector<int> parts;
  for (int k = 1; k <= n; ++k) parts.push_back(k);
  std::vector<std::size_t> out;
  for (int d = 0; d <= d_max; ++d) {
    long acc = 0;
    for (const auto& [e, c] : num) {
      if (e <= d) acc += c * static_cast<long>(count_partitions(d - e, parts));
    }
    out.push_back(static_cast<std::size_t>(acc));
  }
  return out;
}

std::vector<std::pair<int, long>> char0(int m) { return {{0, 1}, {3 * m + 1, 2}, {3 * m + 2, 2}, {6 * m + 3, 1}}; }

template <class F>
std::vector<std::size_t> dims(const F& f, int n, int m, int d_max, bool q = false) {
  return hilbert_data(f, n, m, d_max, q).dims;
}

}  // namespace

TEST_CASE("n = 2 in every characteristic") {
  for (int m = 0; m <= 3; ++m) {
    const auto expected = expand({{0, 1}, {2 * m + 1, 1}}, 2, 2 * m + 4);
    CHECK(dims(RationalField{}, 2, m, 2 * m + 4) == expected);
    CHECK(dims(PrimeField(5), 2, m, 2 * m + 4) == expected);
    CHECK(dims(PrimeField(7), 2, m, 2 * m + 4) == expected);
  }
}

TEST_CASE("n = 3 over Q") {
  for (int m = 0; m <= 2; ++m) {
    const HilbertData h = hilbert_data(RationalField{}, 3, m, -1, false);
    CHECK(h.dims == expand(char0(m), 3, 6 * m + 4));
    const std::vector<std::pair<int, Integer>> num{{0, 1}, {3 * m + 1, 2}, {3 * m + 2, 2}, {6 * m + 3, 1}};
    CHECK(h.numerator == num);
    CHECK(h.palindromic);
    CHECK(h.nonnegative);
    CHECK(std_generator_degree(RationalField{}, m, false) == 3 * m + 1);
  }
}

TEST_CASE("n = 3 over F_5 at m = 2 diverges") {
  const HilbertData h = hilbert_data(PrimeField(5), 3, 2, -1, false);
  const std::vector<std::pair<int, Integer>> num{{0, 1}, {5, 2}, {10, 2}, {15, 1}};
  CHECK(h.numerator == num);
  CHECK(std_generator_degree(PrimeField(5), 2, false) == 5);
  // m = 1 is unaffected by p = 5
  CHECK(dims(PrimeField(5), 3, 1, 10) == expand(char0(1), 3, 10));
}

TEST_CASE("q-deformed dimensions") {
  // formal q matches characteristic 0
  CHECK(dims(FormalQField{}, 3, 1, 10, true) == expand(char0(1), 3, 10));
  CHECK(dims(FormalQField{}, 2, 2, 8, true) == expand({{0, 1}, {5, 1}}, 2, 8));
  // a primitive cube root of unity at m = 1 does not
  const HilbertData h = hilbert_data(CyclotomicField(3), 3, 1, -1, true);
  const std::vector<std::pair<int, Integer>> num{{0, 1}, {3, 2}, {6, 2}, {9, 1}};
  CHECK(h.numerator == num);
  CHECK(h.dims[3] == 5);
}

TEST_CASE("sign generators") {
  for (int m = 0; m <= 2; ++m) {
    CHECK_NOTHROW(sign_generator(RationalField{}, 3, m, false));
    CHECK_NOTHROW(sign_generator(FormalQField{}, 3, m, true));
    CHECK_NOTHROW(sign_generator(CyclotomicField(5), 3, m, true));
  }
  CHECK(sign_generator(RationalField{}, 3, 1, false).total_degree() == 9);
}

TEST_CASE("isotypic dimensions add up") {
  RationalField f;
  for (auto [m, d] : std::vector<std::pair<int, int>>{{1, 4}, {1, 6}, {2, 8}, {1, 9}}) {
    const std::size_t total = quasi_dimension(f, 3, m, d, false);
    std::size_t sum = 0;
    for (auto l : {IsotypicLabel::Triv, IsotypicLabel::Sign, IsotypicLabel::Std}) {
      sum += isotypic_dimension(f, 3, m, d, l, false);
    }
    CHECK(sum == total);
    CHECK(isotypic_dimension(f, 3, m, d, IsotypicLabel::Triv, false) == count_partitions(d, {1, 2, 3}));
  }
}

TEST_CASE("Q_{m+1} lies in Q_m") {
  std::mt19937_64 rng(17);
  RationalField f;
  for (int t = 0; t < 8; ++t) {
    const int m = static_cast<int>(rng() % 3), d = static_cast<int>(rng() % 9);
    const auto b = quasi_basis(f, 3, m + 1, d, false);
    for (const auto& p : b.basis) CHECK(is_quasi_invariant(p, m));
    CHECK(b.dim() <= quasi_dimension(f, 3, m, d, false));
  }
}

TEST_CASE("basis elements satisfy the defining condition") {
  const auto b = quasi_basis(RationalField{}, 3, 1, 5, false);
  CHECK(b.dim() == 9);
  for (const auto& p : b.basis) CHECK(is_quasi_invariant(p, 1));
  const auto bq = quasi_basis(CyclotomicField(5), 3, 2, 5, true);
  for (const auto& p : bq.basis) CHECK(is_quasi_invariant(p, 2, true));
}

TEST_CASE("results do not depend on the worker count") {
  CHECK(hilbert_data(RationalField{}, 3, 1, 10, false, 1).dims == hilbert_data(RationalField{}, 3, 1, 10, false, 4).dims);
}

TEST_CASE("series helpers") {
  const std::vector<std::pair<int, Integer>> num{{0, 1}, {4, 2}, {5, 2}, {9, 1}};
  const auto series = series_from_numerator(num, 3, 12);
  std::vector<std::size_t> ds;
  for (const auto& v : series) ds.push_back(v.get_ui());
  CHECK(numerator_from_dims(ds, 3) == num);
  CHECK(is_palindromic(num));
  CHECK_FALSE(is_palindromic({{0, 1}, {4, 2}, {9, 2}}));
}

TEST_CASE("modular characteristic is rejected") {
  CHECK_THROWS_AS(quasi_basis(PrimeField(3), 3, 1, 4, false), BadCharacteristic);
  CHECK_THROWS_AS(quasi_basis(PrimeField(2), 2, 1, 4, false), BadCharacteristic);
  CHECK_THROWS_AS(quasi_basis(RationalField{}, 3, 1, 4, true), InvalidDomain);
}
