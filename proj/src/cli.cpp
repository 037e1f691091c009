#include "quasinv/cli.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <functional>
#include <optional>
#include <sstream>
#include <utility>

#include "quasinv/errors.hpp"
#include "quasinv/generators.hpp"
#include "quasinv/integer.hpp"
#include "quasinv/parallel.hpp"
#include "quasinv/qdeform.hpp"
#include "quasinv/quasi.hpp"
#include "quasinv/shift.hpp"

namespace quasinv {

namespace fs = std::filesystem;

void RunConfig::validate() const {
  static const std::vector<std::string> known{"hilbert", "sweep", "shift-verify", "qdeform", "qdeform-sweep"};
  if (std::find(known.begin(), known.end(), command) == known.end()) {
    throw InvalidArgument("unknown command '" + command + "'");
  }
  if (n < 2 || n > 7) throw RangeViolation("--n must be in 2..7");
  if (m < 0) throw RangeViolation("--m must be non-negative");
  if (m_max < 0) throw RangeViolation("--m-max must be non-negative");
  if (d_max < -1 || d_max > 255) throw RangeViolation("--dmax must be in 0..255");
  if (format != "json" && format != "csv") throw InvalidArgument("--format must be json or csv");
  if (format == "csv" && command != "hilbert") throw InvalidArgument("--format csv is only available for hilbert");
  domain.validate();
  if (command == "hilbert") {
    if (domain.characteristic() != 0 && domain.characteristic() <= static_cast<std::uint64_t>(n)) {
      throw BadCharacteristic("characteristic " + std::to_string(domain.characteristic()) + " divides " +
                              std::to_string(n) + "!; quasi-invariants are computed in the non-modular case p > n");
    }
    if (q_deformed && !domain.has_q()) throw InvalidDomain("--q needs a Cyclotomic or FormalQ domain");
  }
  if (command == "shift-verify") {
    for (auto q : primes) {
      if (q <= 3 || !is_prime(q)) throw BadCharacteristic("--primes must be primes greater than 3");
    }
  }
  if (command == "sweep" && prime_bound < 5) throw RangeViolation("--prime-bound must be at least 5");
  if (command == "qdeform") {
    if (n != 2 && n != 3) throw RangeViolation("qdeform supports n = 2 and n = 3");
    if (p < 2) throw InvalidDomain("--p must be at least 2");
  }
  if (!checkpoint.empty() && command != "sweep" && command != "qdeform-sweep") {
    throw InvalidArgument("--checkpoint is only used by the sweeps");
  }
  if (!checkpoint.empty() && out.empty()) throw InvalidArgument("--checkpoint needs --out");
  if (resume && checkpoint.empty()) throw InvalidArgument("--resume needs --checkpoint");
}

int exit_code_for(const std::exception& e) {
  if (dynamic_cast<const CheckpointCorrupt*>(&e)) return 4;
  if (dynamic_cast<const InvalidArgument*>(&e)) return 2;
  if (dynamic_cast<const ConsistencyError*>(&e)) return 3;
  return 1;
}

namespace {

void emit(std::ostream& os, const json& j) { os << j.dump() << '\n'; }

json primes_json(const std::vector<std::uint64_t>& v) { return json(v); }

// ---------------------------------------------------------------- hilbert

template <class F>
void hilbert_for(const F& f, const RunConfig& cfg, std::ostream& os) {
  const bool q = cfg.q_deformed || f.has_q();
  HilbertData h = hilbert_data(f, cfg.n, cfg.m, cfg.d_max, q, cfg.threads);
  if (cfg.format == "csv") {
    os << "d,dim\r\n";
    for (std::size_t d = 0; d < h.dims.size(); ++d) os << d << ',' << h.dims[d] << "\r\n";
    return;
  }
  json j = to_json(h);
  j["std_degree"] = cfg.n == 3 ? json(std_generator_degree(f, cfg.m, q)) : json(nullptr);
  emit(os, j);
}

// ---------------------------------------------------------------- resumable sweeps

struct Record {
  std::string line;  // without the newline
  json state;        // what a resumed run needs to continue after this record
};

// Produces the records for m in [first, last] given the state after first - 1.
using Producer = std::function<std::vector<Record>(int first, int last, const json& state)>;

json read_checkpoint(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw CheckpointCorrupt("cannot read checkpoint " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw CheckpointCorrupt("checkpoint " + path + " is not valid JSON: " + e.what());
  }
  if (!j.is_object() || j.value("schema", 0) != 1 || !j.contains("config") || !j.contains("next_m") ||
      !j.contains("output_bytes") || !j.contains("state") || !j["next_m"].is_number_integer() ||
      !j["output_bytes"].is_number_unsigned()) {
    throw CheckpointCorrupt("checkpoint " + path + " is missing fields");
  }
  return j;
}

void write_checkpoint(const std::string& path, const json& j) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::trunc);
    if (!out) throw InvalidArgument("cannot write checkpoint " + tmp);
    out << j.dump() << '\n';
    out.flush();
    if (!out) throw InvalidArgument("cannot write checkpoint " + tmp);
  }
  fs::rename(tmp, path);
}

void run_sweep(const RunConfig& cfg, const json& config_id, std::ostream& os, int batch, const Producer& produce) {
  int next = 0;
  json state;
  std::uint64_t bytes = 0;
  const bool to_file = !cfg.out.empty();
  const bool checkpointing = !cfg.checkpoint.empty();

  if (checkpointing && cfg.resume && fs::exists(cfg.checkpoint)) {
    json ck = read_checkpoint(cfg.checkpoint);
    if (ck["config"] != config_id) throw CheckpointCorrupt("checkpoint was written for a different configuration");
    next = ck["next_m"].get<int>();
    bytes = ck["output_bytes"].get<std::uint64_t>();
    state = ck["state"];
    if (!fs::exists(cfg.out) || fs::file_size(cfg.out) < bytes) {
      throw CheckpointCorrupt("output " + cfg.out + " is shorter than the checkpoint records");
    }
    fs::resize_file(cfg.out, bytes);
  } else if (to_file) {
    std::ofstream(cfg.out, std::ios::trunc);
  }

  std::ofstream file;
  if (to_file) {
    file.open(cfg.out, std::ios::app | std::ios::binary);
    if (!file) throw InvalidArgument("cannot open " + cfg.out);
  }
  std::ostream& sink = to_file ? static_cast<std::ostream&>(file) : os;

  int written = 0;
  while (next <= cfg.m_max) {
    if (cfg.stop_after >= 0 && written >= cfg.stop_after) return;
    int last = std::min(cfg.m_max, next + batch - 1);
    if (cfg.stop_after >= 0) last = std::min(last, next + (cfg.stop_after - written) - 1);
    std::vector<Record> recs = produce(next, last, state);
    for (auto& r : recs) {
      sink << r.line << '\n';
      sink.flush();
      bytes += r.line.size() + 1;
      ++next;
      ++written;
      state = std::move(r.state);
      if (checkpointing) {
        write_checkpoint(cfg.checkpoint, json{{"schema", 1},
                                              {"config", config_id},
                                              {"next_m", next},
                                              {"output_bytes", bytes},
                                              {"state", state}});
      }
    }
  }
}

json chain_record(const GeneratorChain& g, std::uint64_t bound) {
  json j;
  j["schema"] = 1;
  j["m"] = g.m;
  j["c_m"] = g.c.get_str();
  const Factorization fac = factor_integer(g.c);
  json big = json::array();
  for (const auto& [q, e] : fac.primes) {
    if (q > 3) big.push_back(q.get_str());
  }
  j["prime_factors_gt3"] = std::move(big);
  if (!fac.complete()) j["unfactored"] = fac.cofactor.get_str();
  const auto rx = renxu_primes(g.m, bound);
  j["renxu_primes"] = primes_json(rx);
  j["agree"] = differing_primes(g.c, bound) == rx;
  return j;
}

}  // namespace

void cmd_hilbert(const RunConfig& cfg, std::ostream& os) {
  std::visit([&](const auto& f) { hilbert_for(f, cfg, os); }, make_domain(cfg.domain));
}

void cmd_sweep(const RunConfig& cfg, std::ostream& os) {
  const json config_id{{"command", "sweep"}, {"m_max", cfg.m_max}, {"prime_bound", cfg.prime_bound}};
  const unsigned threads = cfg.threads == 0 ? default_threads() : cfg.threads;
  run_sweep(cfg, config_id, os, static_cast<int>(std::max(4U, 2 * threads)),
            [&](int first, int last, const json& state) {
              std::vector<GeneratorChain> levels;
              GeneratorChain g = first == 0 ? initial_chain() : lift_chain(GeneratorChain::from_json(state));
              levels.push_back(g);
              for (int m = first + 1; m <= last; ++m) levels.push_back(lift_chain(levels.back()));
              auto lines = parallel_map<std::string>(
                  levels.size(), [&](std::size_t i) { return chain_record(levels[i], cfg.prime_bound).dump(); },
                  cfg.threads);
              std::vector<Record> out;
              for (std::size_t i = 0; i < levels.size(); ++i) out.push_back({lines[i], levels[i].to_json()});
              return out;
            });
}

void cmd_shift_verify(const RunConfig& cfg, std::ostream& os) {
  emit(os, shift_verify(cfg.m_max, cfg.primes, cfg.threads).to_json());
}

void cmd_qdeform(const RunConfig& cfg, std::ostream& os) {
  emit(os, flatness_check(cfg.n, cfg.m, cfg.p, cfg.d_max, cfg.with_formal, cfg.threads).to_json());
}

void cmd_qdeform_sweep(const RunConfig& cfg, std::ostream& os) {
  const json config_id{{"command", "qdeform-sweep"}, {"m_max", cfg.m_max}};
  run_sweep(cfg, config_id, os, static_cast<int>(std::max(1U, cfg.threads == 0 ? default_threads() : cfg.threads)),
            [&](int first, int last, const json&) {
              auto lines = parallel_map<std::string>(
                  static_cast<std::size_t>(last - first + 1),
                  [&](std::size_t i) {
                    const int m = first + static_cast<int>(i);
                    const QWedge w = q_wedge_polynomial(m);
                    const auto [lo, hi] = thm56_range(3, m);
                    std::vector<std::uint64_t> range;
                    for (long v = lo; v <= hi; ++v) range.push_back(static_cast<std::uint64_t>(v));
                    json j = w.to_json();
                    j["schema"] = 1;
                    j["thm56_range"] = lo <= hi ? json::array({lo, hi}) : json::array();
                    j["flat_values_excluded"] = w.excluded();
                    const auto ex = w.excluded();
                    for (auto v : range) {
                      if (!std::binary_search(ex.begin(), ex.end(), v)) {
                        throw TheoremViolation("Phi_" + std::to_string(v) + " does not divide c(q) at m = " +
                                               std::to_string(m));
                      }
                    }
                    j["conjecture_holds"] = ex == range;
                    return j.dump();
                  },
                  cfg.threads);
              std::vector<Record> out;
              for (auto& l : lines) out.push_back({std::move(l), json(nullptr)});
              return out;
            });
}

void run_command(const RunConfig& cfg, std::ostream& os) {
  cfg.validate();
  const bool streaming = cfg.command == "sweep" || cfg.command == "qdeform-sweep";
  std::ofstream file;
  if (!cfg.out.empty() && !streaming) {
    file.open(cfg.out, std::ios::trunc | std::ios::binary);
    if (!file) throw InvalidArgument("cannot open " + cfg.out);
  }
  std::ostream& sink = file.is_open() ? static_cast<std::ostream&>(file) : os;
  if (cfg.command == "hilbert") cmd_hilbert(cfg, sink);
  else if (cfg.command == "sweep") cmd_sweep(cfg, sink);
  else if (cfg.command == "shift-verify") cmd_shift_verify(cfg, sink);
  else if (cfg.command == "qdeform") cmd_qdeform(cfg, sink);
  else cmd_qdeform_sweep(cfg, sink);
}

}  // namespace quasinv
