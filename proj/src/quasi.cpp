#include "quasinv/quasi.hpp"

namespace quasinv {

std::vector<std::pair<int, Integer>> numerator_from_dims(const std::vector<std::size_t>& dims, int n) {
  // prod_{k=1}^{n} (1 - t^k)
  std::vector<Integer> den{1};
  for (int k = 1; k <= n; ++k) {
    std::vector<Integer> next(den.size() + static_cast<std::size_t>(k), 0);
    for (std::size_t a = 0; a < den.size(); ++a) {
      next[a] += den[a];
      next[a + static_cast<std::size_t>(k)] -= den[a];
    }
    den = std::move(next);
  }
  std::vector<std::pair<int, Integer>> out;
  for (std::size_t e = 0; e < dims.size(); ++e) {
    Integer c = 0;
    for (std::size_t a = 0; a <= e && a < den.size(); ++a) c += den[a] * static_cast<unsigned long>(dims[e - a]);
    if (c != 0) out.emplace_back(static_cast<int>(e), c);
  }
  return out;
}

std::vector<Integer> series_from_numerator(const std::vector<std::pair<int, Integer>>& num, int n, int d_max) {
  std::vector<Integer> s(static_cast<std::size_t>(d_max + 1), 0);
  for (const auto& [e, c] : num) {
    if (e <= d_max) s[static_cast<std::size_t>(e)] += c;
  }
  // divide by (1 - t^k) for each k: running sums with stride k
  for (int k = 1; k <= n; ++k) {
    for (int e = k; e <= d_max; ++e) s[static_cast<std::size_t>(e)] += s[static_cast<std::size_t>(e - k)];
  }
  return s;
}

bool is_palindromic(const std::vector<std::pair<int, Integer>>& num) {
  if (num.empty()) return true;
  const int top = num.back().first;
  std::vector<Integer> c(static_cast<std::size_t>(top + 1), 0);
  for (const auto& [e, v] : num) c[static_cast<std::size_t>(e)] = v;
  for (int e = 0; e <= top; ++e) {
    if (c[static_cast<std::size_t>(e)] != c[static_cast<std::size_t>(top - e)]) return false;
  }
  return true;
}

json to_json(const HilbertData& h) {
  json num = json::array();
  for (const auto& [e, c] : h.numerator) num.push_back(json::array({e, c.get_str()}));
  return json{{"schema", 1},
              {"n", h.n},
              {"m", h.m},
              {"domain", h.domain},
              {"q_deformed", h.q_deformed},
              {"d_max", h.d_max},
              {"dims", h.dims},
              {"numerator", num},
              {"denominator_degrees", h.denominator_degrees},
              {"numerator_nonnegative", h.nonnegative},
              {"palindromic", h.palindromic}};
}

}  // namespace quasinv
