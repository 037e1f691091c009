#include "quasinv/poly.hpp"

#include <cctype>

namespace quasinv {

namespace mono {

MonoKey make(const std::vector<int>& exps) {
  if (exps.size() > static_cast<std::size_t>(kMaxVars)) throw RangeViolation("too many variables");
  int d = 0;
  MonoKey k = 0;
  for (std::size_t i = 0; i < exps.size(); ++i) {
    if (exps[i] < 0) throw RangeViolation("negative exponent");
    d += exps[i];
    k |= MonoKey(static_cast<unsigned>(exps[i])) << shift_of(static_cast<int>(i));
  }
  if (d > 255) throw RangeViolation("total degree above 255");
  return k | (MonoKey(static_cast<unsigned>(d)) << 56);
}

std::vector<int> exponents(MonoKey k, int n) {
  std::vector<int> e(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) e[static_cast<std::size_t>(i)] = exponent(k, i);
  return e;
}

MonoKey mul(MonoKey a, MonoKey b) {
  if (degree(a) + degree(b) > 255) throw RangeViolation("total degree above 255");
  return a + b;
}

namespace {
void fill(int n, int i, int left, std::vector<int>& cur, std::vector<MonoKey>& out) {
  if (i == n - 1) {
    cur[static_cast<std::size_t>(i)] = left;
    out.push_back(make(cur));
    return;
  }
  for (int e = left; e >= 0; --e) {
    cur[static_cast<std::size_t>(i)] = e;
    fill(n, i + 1, left - e, cur, out);
  }
}
}  // namespace

std::vector<MonoKey> of_degree(int n, int d) {
  if (d < 0 || d > 255) throw RangeViolation("degree out of range");
  std::vector<MonoKey> out;
  std::vector<int> cur(static_cast<std::size_t>(n), 0);
  fill(n, 0, d, cur, out);
  return out;
}

}  // namespace mono

std::string to_string(IsotypicLabel l) {
  switch (l) {
    case IsotypicLabel::Triv:
      return "triv";
    case IsotypicLabel::Sign:
      return "sign";
    case IsotypicLabel::Std:
      return "std";
  }
  return "?";
}

IsotypicLabel parse_isotypic(const std::string& s) {
  std::string t;
  for (char c : s) t.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  if (t == "triv") return IsotypicLabel::Triv;
  if (t == "sign") return IsotypicLabel::Sign;
  if (t == "std") return IsotypicLabel::Std;
  throw InvalidArgument("unknown isotypic label: " + s);
}

std::vector<std::vector<int>> all_permutations(int n) {
  std::vector<int> p(static_cast<std::size_t>(n));
  std::iota(p.begin(), p.end(), 0);
  std::vector<std::vector<int>> out;
  do {
    out.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  return out;
}

int permutation_sign(const std::vector<int>& perm) {
  int inversions = 0;
  for (std::size_t i = 0; i < perm.size(); ++i) {
    for (std::size_t j = i + 1; j < perm.size(); ++j) inversions += perm[i] > perm[j] ? 1 : 0;
  }
  return inversions % 2 == 0 ? 1 : -1;
}

}  // namespace quasinv
