#pragma once

// Command implementations behind the quasinv executable. Each command writes
// deterministic bytes for a fixed configuration; the sweeps stream one JSON
// line per m and can resume from a checkpoint.

#include <cstdint>
#include <exception>
#include <ostream>
#include <string>
#include <vector>

#include "quasinv/coeffs.hpp"

namespace quasinv {

struct RunConfig {
  std::string command;
  int n = 3;
  int m = 0;
  int m_max = 10;
  DomainSpec domain = DomainSpec::rational();
  bool q_deformed = false;
  int d_max = -1;  // command default
  std::uint64_t p = 0;
  std::vector<std::uint64_t> primes{5, 7, 11, 13};
  std::uint64_t prime_bound = 100;
  bool with_formal = true;
  unsigned threads = 0;
  std::string format = "json";  // json | csv (hilbert only)
  std::string out;              // empty: the stream passed to run_command
  std::string checkpoint;       // sweeps only
  bool resume = false;
  int stop_after = -1;  // sweeps: stop after this many records, leaving the checkpoint

  /// Throws InvalidArgument (or a subclass) naming the offending option.
  void validate() const;
};

/// 0 success, 2 invalid configuration, 3 internal consistency failure,
/// 4 corrupt checkpoint, 1 anything else.
int exit_code_for(const std::exception& e);

void cmd_hilbert(const RunConfig& cfg, std::ostream& os);
void cmd_sweep(const RunConfig& cfg, std::ostream& os);
void cmd_shift_verify(const RunConfig& cfg, std::ostream& os);
void cmd_qdeform(const RunConfig& cfg, std::ostream& os);
void cmd_qdeform_sweep(const RunConfig& cfg, std::ostream& os);

/// Validates and dispatches on cfg.command. Output goes to cfg.out when set.
void run_command(const RunConfig& cfg, std::ostream& os);

}  // namespace quasinv
