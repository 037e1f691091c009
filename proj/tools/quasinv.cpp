#include <CLI11.hpp>

#include <iostream>
#include <optional>
#include <string>

#include "quasinv/cli.hpp"
#include "quasinv/errors.hpp"
#include "quasinv/parallel.hpp"

using namespace quasinv;

namespace {

struct Raw {
  std::uint64_t characteristic = 0;
  std::string domain;
};

void add_common(CLI::App* sub, RunConfig& cfg) {
  sub->add_option("--threads", cfg.threads, "worker threads (0: hardware concurrency, capped by QUASINV_THREADS)");
  sub->add_option("--out", cfg.out, "output file (default stdout)");
}

void add_sweep(CLI::App* sub, RunConfig& cfg) {
  sub->add_option("--m-max", cfg.m_max, "largest m")->required();
  sub->add_option("--checkpoint", cfg.checkpoint, "checkpoint file, rewritten after every record");
  sub->add_flag("--resume", cfg.resume, "continue from --checkpoint when it exists");
  sub->add_option("--stop-after", cfg.stop_after, "stop after this many records")->group("");
}

}  // namespace

int main(int argc, char** argv) {
  RunConfig cfg;
  Raw raw;
  CLI::App app{"Quasi-invariant polynomials of S_n: Hilbert series, generators, shift operators, q-deformations"};
  app.require_subcommand(1);

  auto* hilbert = app.add_subcommand("hilbert", "dimensions and Hilbert series numerator of Q_m(n)");
  hilbert->add_option("--n", cfg.n, "number of variables")->required();
  hilbert->add_option("--m", cfg.m, "multiplicity")->required();
  hilbert->add_option("--char", raw.characteristic, "0 for Q, a prime p > n for F_p");
  hilbert->add_option("--domain", raw.domain, "Rational, PrimeField(p), Cyclotomic(p) or FormalQ; overrides --char");
  hilbert->add_flag("--q", cfg.q_deformed, "q-deformed divisibility (implied by q-domains)");
  hilbert->add_option("--dmax", cfg.d_max, "largest degree (default 6m+4 for n = 3)");
  hilbert->add_option("--format", cfg.format, "json or csv");
  add_common(hilbert, cfg);

  auto* sweep = app.add_subcommand("sweep", "c_m and its primes against the Ren-Xu condition, one line per m");
  add_sweep(sweep, cfg);
  sweep->add_option("--prime-bound", cfg.prime_bound, "compare primes 3 < p <= bound");
  add_common(sweep, cfg);

  auto* shift = app.add_subcommand("shift-verify", "shift operator scalars, valuations and relations");
  shift->add_option("--m-max", cfg.m_max, "largest m")->required();
  shift->add_option("--primes", cfg.primes, "primes > 3")->delimiter(',');
  add_common(shift, cfg);

  auto* qdeform = app.add_subcommand("qdeform", "flatness of Q_{m,q}(n) at a primitive p-th root of unity");
  qdeform->add_option("--n", cfg.n, "2 or 3");
  qdeform->add_option("--m", cfg.m, "multiplicity")->required();
  qdeform->add_option("--p", cfg.p, "order of the root of unity")->required();
  qdeform->add_option("--dmax", cfg.d_max, "largest degree");
  qdeform->add_flag("!--no-formal", cfg.with_formal, "skip the Q(q) dimensions");
  add_common(qdeform, cfg);

  auto* qsweep = app.add_subcommand("qdeform-sweep", "c(q) and its cyclotomic factors, one line per m");
  add_sweep(qsweep, cfg);
  add_common(qsweep, cfg);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    cfg.command = app.get_subcommands().front()->get_name();
    if (!raw.domain.empty()) {
      cfg.domain = DomainSpec::parse(raw.domain);
    } else if (raw.characteristic != 0) {
      cfg.domain = DomainSpec::prime_field(raw.characteristic);
    }
    set_default_threads(cfg.threads);
    cfg.threads = default_threads();
    run_command(cfg, std::cout);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_code_for(e);
  }
  return 0;
}
