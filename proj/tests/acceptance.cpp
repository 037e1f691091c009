// Acceptance run: one PASS/FAIL line per criterion, exit status 0 only when
// every criterion passes.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "quasinv/cli.hpp"
#include "quasinv/coeffs.hpp"
#include "quasinv/errors.hpp"
#include "quasinv/generators.hpp"
#include "quasinv/qdeform.hpp"
#include "quasinv/quasi.hpp"
#include "quasinv/shift.hpp"

using namespace quasinv;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (ok) return;
    if (pass) detail = what;
    else detail += "; " + what;
    pass = false;
  }
};

// numerators seen by criteria 1-3; checked for palindromy in criterion 5
std::vector<Numerator> computed_numerators;

Numerator n2_numerator(int m) { return {{0, Integer(1)}, {2 * m + 1, Integer(1)}}; }

template <class F>
Outcome n2_for(const F& f, Outcome o) {
  for (int m = 0; m <= 3; ++m) {
    const HilbertData h = hilbert_data(f, 2, m, 2 * m + 4, false);
    const auto expected = series_from_numerator(n2_numerator(m), 2, 2 * m + 4);
    for (int d = 0; d <= 2 * m + 4; ++d) {
      o.require(Integer(static_cast<unsigned long>(h.dims[static_cast<std::size_t>(d)])) ==
                    expected[static_cast<std::size_t>(d)],
                f.spec().name() + " m=" + std::to_string(m) + " d=" + std::to_string(d));
    }
    computed_numerators.push_back(h.numerator);
  }
  return o;
}

Outcome criterion1() {
  Outcome o;
  o = n2_for(RationalField{}, o);
  o = n2_for(PrimeField(5), o);
  o = n2_for(PrimeField(7), o);
  return o;
}

Outcome criterion2() {
  Outcome o;
  RationalField f;
  for (int m = 0; m <= 3; ++m) {
    const HilbertData h = hilbert_data(f, 3, m, 6 * m + 4, false);
    o.require(h.numerator == char0_numerator(m), "numerator at m=" + std::to_string(m));
    o.require(std_generator_degree(f, m, false) == 3 * m + 1, "Std degree at m=" + std::to_string(m));
    computed_numerators.push_back(h.numerator);
  }
  return o;
}

Outcome criterion3() {
  Outcome o;
  const auto expect = [](std::vector<int> exps) {
    Numerator n;
    const long c[] = {1, 2, 2, 1};
    for (std::size_t i = 0; i < 4; ++i) n.emplace_back(exps[i], Integer(c[i]));
    return n;
  };
  const HilbertData a = hilbert_data(PrimeField(5), 3, 2, -1, false);
  o.require(a.numerator == expect({0, 5, 10, 15}), "Q_2(3, F5)");
  o.require(predicted_charp_numerator(2, 5) == a.numerator, "prediction at (2, 5)");
  const HilbertData b = hilbert_data(PrimeField(11), 3, 5, -1, false);
  o.require(b.numerator == expect({0, 11, 22, 33}), "Q_5(3, F11)");
  o.require(predicted_charp_numerator(5, 11) == b.numerator, "prediction at (5, 11)");
  computed_numerators.push_back(a.numerator);
  computed_numerators.push_back(b.numerator);
  return o;
}

Outcome criterion4() {
  Outcome o;
  GeneratorChain g = initial_chain();
  for (int m = 0; m <= 30; ++m) {
    if (m > 0) g = lift_chain(g);
    o.require(differing_primes(g.c, 100) == renxu_primes(m, 100), "prime sets differ at m=" + std::to_string(m));
  }
  return o;
}

Outcome criterion5() {
  Outcome o;
  const auto identity = [&](const auto& f) {
    const auto [p2, p3] = elementary_invariants(f);
    const auto v = vandermonde(f, 3);
    o.require(p2.pow(3) - p3.pow(2).scale(f.from_int(2)) == (v * v).scale(f.from_int(54)),
              "discriminant identity over " + f.spec().name());
  };
  identity(RationalField{});
  identity(PrimeField(5));
  identity(PrimeField(7));
  identity(PrimeField(11));

  for (const auto& n : computed_numerators) o.require(is_palindromic(n), "non-palindromic numerator");
  o.require(!computed_numerators.empty(), "no numerators recorded");

  RationalField f;
  for (auto [m, d] : std::vector<std::pair<int, int>>{{1, 4}, {1, 7}, {2, 8}, {2, 9}}) {
    std::size_t sum = 0;
    for (auto l : {IsotypicLabel::Triv, IsotypicLabel::Sign, IsotypicLabel::Std}) {
      sum += isotypic_dimension(f, 3, m, d, l, false);
    }
    o.require(sum == quasi_dimension(f, 3, m, d, false), "isotypic sum at d=" + std::to_string(d));
  }

  std::mt19937_64 rng(2024);
  for (int t = 0; t < 20; ++t) {
    const int m = static_cast<int>(rng() % 3), d = static_cast<int>(rng() % 11);
    const auto b = quasi_basis(f, 3, m + 1, d, false);
    for (const auto& p : b.basis) o.require(is_quasi_invariant(p, m), "Q_{m+1} element outside Q_m");
  }
  return o;
}

Outcome criterion6() {
  Outcome o;
  RationalField f;
  const auto [p2, p3] = elementary_invariants(f);
  using QP = Poly<RationalField>;
  const QP e1 = QP::variable(f, 3, 0) + QP::variable(f, 3, 1) + QP::variable(f, 3, 2);
  for (int m = 1; m <= 2; ++m) {
    for (int a = 0; a <= 6; ++a) {
      for (int b = 0; a + 2 * b <= 6; ++b) {
        for (int c = 0; a + 2 * b + 3 * c <= 6; ++c) {
          const QP s = e1.pow(static_cast<unsigned>(a)) * p2.pow(static_cast<unsigned>(b)) *
                       p3.pow(static_cast<unsigned>(c));
          o.require(opdam_apply(m, s) == opdam_dunkl_oracle(m, s), "oracle mismatch");
        }
      }
    }
  }
  for (int m = 1; m <= 3; ++m) {
    for (int d = 0; d <= 3 * m + 4; ++d) {
      for (const auto& p : quasi_basis(f, 3, m - 1, d, false).basis) {
        o.require(is_quasi_invariant(opdam_apply(m, p), m),
                  "image outside Q_" + std::to_string(m) + " in degree " + std::to_string(d));
      }
    }
  }
  return o;
}

Outcome criterion7() {
  Outcome o;
  const ShiftReport r = shift_verify(20, {5, 7, 11, 13});
  o.require(r.relations_hold(), "scalar relations");
  o.require(r.consistency, "valuation consistency");
  if (!r.findings.empty()) {
    std::ostringstream s;
    s << r.findings.size() << " valuation findings:";
    for (const auto& fnd : r.findings) {
      s << " (m=" << fnd.m << ",p=" << fnd.p << "," << to_string(fnd.which) << ": v="
        << (fnd.observed ? std::to_string(*fnd.observed) : "inf") << " predicted="
        << (fnd.predicted ? std::to_string(*fnd.predicted) : "none") << ")";
    }
    s << "; observed-form findings: " << r.observed_findings.size();
    o.require(false, s.str());
  }
  return o;
}

Outcome criterion8() {
  Outcome o;
  for (int m = 0; m <= 3; ++m) {
    for (std::uint64_t p : {3, 4, 5}) {
      const QDeformationReport r = flatness_check(2, m, p);
      o.require(r.agreement && r.dims_formal == r.dims_expected, "n=2 depends on q");
    }
  }
  for (auto [m, p] : std::vector<std::pair<int, std::uint64_t>>{{1, 3}, {2, 5}, {2, 6}}) {
    const QDeformationReport r = flatness_check(3, m, p);
    const std::string at = "(m=" + std::to_string(m) + ",p=" + std::to_string(p) + ")";
    o.require(!r.agreement, "no divergence at " + at);
    o.require(r.pmq && r.first_difference && r.pmq->degree == *r.first_difference,
              "P_{m,q} is not the first new element at " + at);
    o.require(r.dominance, "dominance at " + at);
  }
  for (int m = 0; m <= 3; ++m) {
    const QWedge w = q_wedge_polynomial(m);
    const auto [lo, hi] = thm56_range(3, m);
    std::vector<std::uint64_t> range;
    for (int v = lo; v <= hi; ++v) range.push_back(static_cast<std::uint64_t>(v));
    o.require(w.excluded() == range && !w.non_cyclotomic(), "c(q) factors at m=" + std::to_string(m));
  }
  for (auto [m, p] : std::vector<std::pair<int, std::uint64_t>>{{1, 4}, {1, 7}, {3, 7}}) {
    o.require(flatness_check(3, m, p).dominance, "dominance at m=" + std::to_string(m));
  }
  return o;
}

std::string run_to_string(RunConfig c) {
  std::ostringstream os;
  run_command(c, os);
  return os.str();
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

Outcome criterion9() {
  Outcome o;
  std::vector<RunConfig> reports;
  {
    RunConfig c;
    c.command = "hilbert";
    c.m = 2;
    c.domain = DomainSpec::prime_field(5);
    reports.push_back(c);
    c.domain = DomainSpec::cyclotomic(5);
    reports.push_back(c);
  }
  {
    RunConfig c;
    c.command = "sweep";
    c.m_max = 20;
    reports.push_back(c);
  }
  {
    RunConfig c;
    c.command = "shift-verify";
    c.m_max = 8;
    reports.push_back(c);
  }
  {
    RunConfig c;
    c.command = "qdeform";
    c.m = 2;
    c.p = 5;
    reports.push_back(c);
  }
  {
    RunConfig c;
    c.command = "qdeform-sweep";
    c.m_max = 3;
    reports.push_back(c);
  }
  for (auto c : reports) {
    c.threads = 1;
    const std::string base = run_to_string(c);
    for (unsigned t : {4U, 8U}) {
      c.threads = t;
      o.require(run_to_string(c) == base, c.command + " differs at " + std::to_string(t) + " threads");
    }
  }

  const fs::path dir = fs::temp_directory_path() / "quasinv_acceptance";
  fs::remove_all(dir);
  fs::create_directories(dir);
  RunConfig full;
  full.command = "sweep";
  full.m_max = 50;
  full.out = (dir / "full.jsonl").string();
  run_to_string(full);
  RunConfig part = full;
  part.out = (dir / "part.jsonl").string();
  part.checkpoint = (dir / "sweep.ck").string();
  part.resume = true;
  part.stop_after = 6;  // records m = 0..5, then stops as if killed
  part.threads = 4;
  run_to_string(part);
  std::ofstream(part.out, std::ios::app) << "{\"m\":6,\"c_m\":\"12";
  part.stop_after = -1;
  run_to_string(part);
  o.require(slurp(part.out) == slurp(full.out), "resumed sweep differs");
  fs::remove_all(dir);
  return o;
}

}  // namespace

int main() {
  const std::vector<std::function<Outcome()>> criteria{criterion1, criterion2, criterion3, criterion4, criterion5,
                                                       criterion6, criterion7, criterion8, criterion9};
  bool all = true;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i]();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    all = all && o.pass;
    std::printf("criterion %zu: %s (%.1f s)%s%s\n", i + 1, o.pass ? "PASS" : "FAIL", secs,
                o.detail.empty() ? "" : " ", o.detail.c_str());
    std::fflush(stdout);
  }
  return all ? 0 : 1;
}
