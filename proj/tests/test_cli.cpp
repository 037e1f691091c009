#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "quasinv/cli.hpp"
#include "quasinv/errors.hpp"

using namespace quasinv;
namespace fs = std::filesystem;

namespace {

RunConfig config(const std::string& command) {
  RunConfig c;
  c.command = command;
  return c;
}

std::string run(const RunConfig& c) {
  std::ostringstream os;
  run_command(c, os);
  return os.str();
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

int code_of(const RunConfig& c) {
  try {
    run(c);
  } catch (const std::exception& e) {
    return exit_code_for(e);
  }
  return 0;
}

fs::path scratch_dir(const std::string& name) {
  const fs::path d = fs::temp_directory_path() / ("quasinv_test_" + name);
  fs::remove_all(d);
  fs::create_directories(d);
  return d;
}

}  // namespace

TEST_CASE("hilbert numerators") {
  RunConfig c = config("hilbert");
  c.m = 1;
  c.d_max = 12;
  const json j = json::parse(run(c));
  CHECK(j["numerator"] == json::parse(R"([[0,"1"],[4,"2"],[5,"2"],[9,"1"]])"));
  CHECK(j["std_degree"] == 4);
  CHECK(j["schema"] == 1);

  RunConfig c2 = config("hilbert");
  c2.n = 2;
  c2.m = 2;
  c2.domain = DomainSpec::prime_field(7);
  CHECK(json::parse(run(c2))["numerator"] == json::parse(R"([[0,"1"],[5,"1"]])"));
}

TEST_CASE("csv output") {
  RunConfig c = config("hilbert");
  c.n = 2;
  c.m = 0;
  c.d_max = 3;
  c.format = "csv";
  CHECK(run(c) == "d,dim\r\n0,1\r\n1,2\r\n2,3\r\n3,4\r\n");
}

TEST_CASE("exit codes") {
  RunConfig c = config("hilbert");
  c.m = 1;
  c.domain = DomainSpec::prime_field(3);
  CHECK(code_of(c) == 2);

  CHECK(code_of(config("frobnicate")) == 2);

  RunConfig f = config("hilbert");
  f.format = "xml";
  CHECK(code_of(f) == 2);

  RunConfig s = config("shift-verify");
  s.primes = {5, 9};
  CHECK(code_of(s) == 2);

  RunConfig r = config("sweep");
  r.resume = true;
  CHECK(code_of(r) == 2);

  RunConfig q = config("hilbert");
  q.q_deformed = true;
  CHECK(code_of(q) == 2);

  CHECK(exit_code_for(TheoremViolation("x")) == 3);
  CHECK(exit_code_for(CheckpointCorrupt("x")) == 4);
  CHECK(exit_code_for(std::runtime_error("x")) == 1);
}

TEST_CASE("sweep records agree through m = 10") {
  RunConfig c = config("sweep");
  c.m_max = 10;
  std::istringstream lines(run(c));
  std::string line;
  int m = 0;
  while (std::getline(lines, line)) {
    const json j = json::parse(line);
    CHECK(j["m"] == m);
    CHECK(j["agree"] == true);
    ++m;
  }
  CHECK(m == 11);
}

TEST_CASE("sweep resume is byte-identical") {
  const fs::path dir = scratch_dir("resume");
  RunConfig full = config("sweep");
  full.m_max = 20;
  full.out = (dir / "full.jsonl").string();
  run(full);

  RunConfig part = full;
  part.out = (dir / "part.jsonl").string();
  part.checkpoint = (dir / "ck.json").string();
  part.resume = true;
  part.stop_after = 6;
  run(part);
  CHECK(slurp(part.out).size() < slurp(full.out).size());

  // a half-written line after the last checkpoint is discarded
  std::ofstream(part.out, std::ios::app) << "{\"m\":6,\"c_";
  part.stop_after = -1;
  run(part);
  CHECK(slurp(part.out) == slurp(full.out));

  std::ofstream(part.checkpoint, std::ios::trunc) << "{not json";
  CHECK(code_of(part) == 4);
  fs::remove_all(dir);
}

TEST_CASE("qdeform-sweep resume") {
  const fs::path dir = scratch_dir("qresume");
  RunConfig full = config("qdeform-sweep");
  full.m_max = 2;
  full.out = (dir / "full.jsonl").string();
  run(full);
  const std::string expected = slurp(full.out);
  CHECK(json::parse(expected.substr(0, expected.find('\n')))["c"].is_array());

  RunConfig part = full;
  part.out = (dir / "part.jsonl").string();
  part.checkpoint = (dir / "ck.json").string();
  part.resume = true;
  part.stop_after = 1;
  run(part);
  part.stop_after = -1;
  run(part);
  CHECK(slurp(part.out) == expected);

  // a checkpoint from another configuration is refused
  RunConfig other = part;
  other.m_max = 3;
  CHECK(code_of(other) == 4);
  fs::remove_all(dir);
}

TEST_CASE("qdeform report") {
  RunConfig c = config("qdeform");
  c.m = 1;
  c.p = 3;
  c.d_max = 6;
  const json j = json::parse(run(c));
  CHECK(j["agreement"] == false);
  CHECK(j["flat_values_excluded"] == json::array({3}));
}
