#include "quasinv/shift.hpp"

#include "quasinv/errors.hpp"
#include "quasinv/integer.hpp"
#include "quasinv/parallel.hpp"

namespace quasinv {

std::string to_string(ScalarKind k) {
  switch (k) {
    case ScalarKind::A: return "a";
    case ScalarKind::B: return "b";
    case ScalarKind::D: return "d";
    case ScalarKind::E: return "e";
  }
  return "?";
}

const Rational& ScalarEntry::get(ScalarKind k) const {
  switch (k) {
    case ScalarKind::A: return a;
    case ScalarKind::B: return b;
    case ScalarKind::D: return d;
    case ScalarKind::E: return e;
  }
  throw InvalidArgument("unknown scalar kind");
}

namespace {

Rational ratio(const Poly<RationalField>& image, const Poly<RationalField>& gen, const char* what) {
  const auto r = proportionality(image, gen);
  if (!r) throw NotProportional(std::string("shift image is not a multiple of the generator for ") + what);
  return *r;
}

}  // namespace

ScalarEntry scalar_chain(const GeneratorChain& cur, const GeneratorChain& next) {
  if (next.m != cur.m + 1) throw InvalidArgument("scalar_chain needs consecutive levels");
  RationalField f;
  const auto [p2, p3] = elementary_invariants(f);
  const auto A = cur.A(f), B = cur.B(f);
  const auto A1 = next.A(f), B1 = next.B(f);
  const int m1 = next.m;
  ScalarEntry s;
  s.m = cur.m;
  s.a = ratio(opdam_apply(m1, p3 * A), A1, "a");
  s.b = ratio(opdam_apply(m1, p3 * B), B1, "b");
  s.d = ratio(opdam_apply(m1, p2 * B), A1, "d");
  s.e = ratio(opdam_apply(m1, p2 * p2 * A), B1, "e");
  return s;
}

int valuation_profile(const Rational& x, std::uint64_t p) { return valuation(x, p); }

std::optional<int> congruence_predicate(int m, std::uint64_t p, ScalarKind which, CongruenceForm form) {
  if (p <= 3 || !is_prime(p)) throw BadCharacteristic("congruence_predicate needs a prime p > 3");
  if (m < 0) throw RangeViolation("m must be non-negative");
  if (which == ScalarKind::A && m == 1) return std::nullopt;
  if (which == ScalarKind::B && m == 2) return std::nullopt;
  const std::uint64_t bound = 3 * static_cast<std::uint64_t>(m) + 3;
  const auto M = static_cast<std::uint64_t>(m);
  int count = 0;
  for (std::uint64_t pk = p; pk <= bound; pk *= p) {
    const std::uint64_t r = M % pk;
    bool hit = false;
    switch (which) {
      case ScalarKind::A: hit = r == 1 % pk || r == 2 * (pk / 3) % pk; break;
      case ScalarKind::B: {
        const std::uint64_t second = form == CongruenceForm::Stated ? 2 * (pk / 3) - 1 : 2 * ((pk + 1) / 3) - 1;
        hit = r == 2 % pk || r == second % pk;
        break;
      }
      case ScalarKind::D:
        hit = pk % 6 == 5 && (r == (2 * pk - 4) / 3 % pk || r == (2 * pk - 1) / 3 % pk);
        break;
      case ScalarKind::E:
        hit = pk % 6 == 1 && (r == (2 * pk - 5) / 3 % pk || r == (2 * pk - 2) / 3 % pk);
        break;
    }
    if (hit) ++count;
  }
  return count;
}

RelationReport relation_check(const ScalarEntry& s, const Integer& c_m, const Integer& c_next) {
  RelationReport r;
  r.m = s.m;
  const Integer m = s.m;
  const Integer common = (3 * m + 1) * (3 * m + 2) * c_m;
  r.lhs_ab = strip_2_3(Rational(s.a * s.b * c_next));
  r.rhs_ab = strip_2_3(Rational(Integer((m - 1) * (m - 2) * common)));
  r.ab_holds = r.lhs_ab == r.rhs_ab;
  r.lhs_de = strip_2_3(Rational(s.d * s.e * c_next));
  r.rhs_de = strip_2_3(Rational(common));
  r.de_holds = r.lhs_de == r.rhs_de;
  return r;
}

bool valuation_consistency(const ScalarEntry& s, std::uint64_t p) {
  if (s.a * s.b == 0) return true;
  const Integer m = s.m;
  return valuation(Rational(s.a * s.b), p) - valuation(Rational(s.d * s.e), p) ==
         valuation(Integer((m - 1) * (m - 2)), p);
}

bool ShiftReport::relations_hold() const {
  for (const auto& r : relations) {
    if (!r.ab_holds || !r.de_holds) return false;
  }
  return consistency;
}

namespace {

const ScalarKind kKinds[] = {ScalarKind::A, ScalarKind::B, ScalarKind::D, ScalarKind::E};

json finding_json(const ValuationFinding& f) {
  json j;
  j["m"] = f.m;
  j["p"] = f.p;
  j["scalar"] = to_string(f.which);
  j["observed"] = f.observed ? json(*f.observed) : json("zero");
  j["predicted"] = f.predicted ? json(*f.predicted) : json("infinite");
  return j;
}

// zero scalars must be predicted infinite and vice versa
std::optional<ValuationFinding> compare(const ScalarEntry& s, std::uint64_t p, ScalarKind k, CongruenceForm form) {
  ValuationFinding f{s.m, p, k, std::nullopt, congruence_predicate(s.m, p, k, form)};
  const Rational& v = s.get(k);
  if (v != 0) f.observed = valuation_profile(v, p);
  if (f.observed.has_value() == f.predicted.has_value() && (!f.observed || *f.observed == *f.predicted)) {
    return std::nullopt;
  }
  return f;
}

}  // namespace

json ShiftReport::to_json() const {
  json j;
  j["schema"] = 1;
  j["m_max"] = m_max;
  j["primes"] = primes;
  json levels = json::array();
  for (std::size_t i = 0; i < scalars.size(); ++i) {
    const auto& s = scalars[i];
    const auto& r = relations[i];
    json e;
    e["m"] = s.m;
    json val, pred;
    for (auto k : kKinds) {
      const auto name = to_string(k);
      e[name] = s.get(k).get_str();
      for (auto p : primes) {
        const auto key = std::to_string(p);
        const Rational& v = s.get(k);
        val[key][name] = v == 0 ? json("zero") : json(valuation_profile(v, p));
        const auto c = congruence_predicate(s.m, p, k);
        pred[key][name] = c ? json(*c) : json("infinite");
      }
    }
    e["valuations"] = val;
    e["predicted"] = pred;
    e["relation_ab"] = {{"lhs", r.lhs_ab.get_str()}, {"rhs", r.rhs_ab.get_str()}, {"holds", r.ab_holds}};
    e["relation_de"] = {{"lhs", r.lhs_de.get_str()}, {"rhs", r.rhs_de.get_str()}, {"holds", r.de_holds}};
    levels.push_back(std::move(e));
  }
  j["levels"] = std::move(levels);
  json fs = json::array(), ofs = json::array();
  for (const auto& f : findings) fs.push_back(finding_json(f));
  for (const auto& f : observed_findings) ofs.push_back(finding_json(f));
  j["findings"] = std::move(fs);
  j["observed_form_findings"] = std::move(ofs);
  j["valuation_consistency"] = consistency;
  j["relations_hold"] = relations_hold();
  j["valuations_hold"] = valuations_hold();
  return j;
}

ShiftReport shift_verify(int m_max, const std::vector<std::uint64_t>& primes, unsigned threads) {
  if (m_max < 0) throw RangeViolation("m_max must be non-negative");
  for (auto p : primes) {
    if (p <= 3 || !is_prime(p)) throw BadCharacteristic("shift-verify needs primes p > 3");
  }
  std::vector<GeneratorChain> chain{initial_chain()};
  for (int m = 1; m <= m_max + 1; ++m) chain.push_back(lift_chain(chain.back()));

  ShiftReport rep;
  rep.m_max = m_max;
  rep.primes = primes;
  rep.scalars = parallel_map<ScalarEntry>(
      static_cast<std::size_t>(m_max + 1), [&](std::size_t i) { return scalar_chain(chain[i], chain[i + 1]); },
      threads);
  for (const auto& s : rep.scalars) {
    const auto i = static_cast<std::size_t>(s.m);
    rep.relations.push_back(relation_check(s, chain[i].c, chain[i + 1].c));
    for (auto p : primes) {
      if (!valuation_consistency(s, p)) rep.consistency = false;
      for (auto k : kKinds) {
        if (auto f = compare(s, p, k, CongruenceForm::Stated)) rep.findings.push_back(*f);
        if (auto f = compare(s, p, k, CongruenceForm::Observed)) rep.observed_findings.push_back(*f);
      }
    }
  }
  return rep;
}

}  // namespace quasinv
