#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "quasinv/cli.hpp"

using namespace quasinv;
namespace fs = std::filesystem;

// Stored reports under tests/golden. Set QUASINV_UPDATE_GOLDEN=1 to rewrite them.

namespace {

struct Golden {
  std::string file;
  RunConfig cfg;
};

std::vector<Golden> goldens() {
  std::vector<Golden> out;
  const auto add = [&](const std::string& file, const std::string& command, auto&& setup) {
    RunConfig c;
    c.command = command;
    setup(c);
    out.push_back({file, c});
  };
  add("hilbert_n3_m1.json", "hilbert", [](RunConfig& c) {
    c.m = 1;
    c.d_max = 12;
  });
  add("hilbert_n2_m2_f7.json", "hilbert", [](RunConfig& c) {
    c.n = 2;
    c.m = 2;
    c.domain = DomainSpec::prime_field(7);
  });
  add("hilbert_n3_m2_f5.csv", "hilbert", [](RunConfig& c) {
    c.m = 2;
    c.domain = DomainSpec::prime_field(5);
    c.format = "csv";
  });
  add("hilbert_n3_m1_cyc3.json", "hilbert", [](RunConfig& c) {
    c.m = 1;
    c.domain = DomainSpec::cyclotomic(3);
  });
  add("sweep_m30.jsonl", "sweep", [](RunConfig& c) { c.m_max = 30; });
  add("shift_verify_m20.json", "shift-verify", [](RunConfig& c) { c.m_max = 20; });
  add("qdeform_m1_p3.json", "qdeform", [](RunConfig& c) {
    c.m = 1;
    c.p = 3;
  });
  add("qdeform_m2_p5.json", "qdeform", [](RunConfig& c) {
    c.m = 2;
    c.p = 5;
  });
  add("qdeform_sweep_m4.jsonl", "qdeform-sweep", [](RunConfig& c) { c.m_max = 4; });
  return out;
}

}  // namespace

TEST_CASE("reports match the stored golden files") {
  const fs::path dir = QUASINV_GOLDEN_DIR;
  const char* env = std::getenv("QUASINV_UPDATE_GOLDEN");
  const bool update = env != nullptr && std::string(env) == "1";
  for (const auto& g : goldens()) {
    CAPTURE(g.file);
    std::ostringstream os;
    run_command(g.cfg, os);
    const fs::path path = dir / g.file;
    if (update) {
      std::ofstream(path, std::ios::binary | std::ios::trunc) << os.str();
      continue;
    }
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in.good());
    const std::string stored{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
    CHECK(os.str() == stored);
  }
}
