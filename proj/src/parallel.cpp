#include "quasinv/parallel.hpp"

#include <algorithm>
#include <cstdlib>
#include <string>

namespace quasinv {

namespace {

unsigned env_cap() {
  const char* s = std::getenv("QUASINV_THREADS");
  if (s == nullptr || *s == '\0') return 0;
  try {
    long v = std::stol(s);
    return v > 0 ? static_cast<unsigned>(v) : 0;
  } catch (...) {
    return 0;
  }
}

std::atomic<unsigned> g_threads{0};

}  // namespace

unsigned default_threads() {
  unsigned n = g_threads.load();
  if (n == 0) n = std::max(1U, std::thread::hardware_concurrency());
  unsigned cap = env_cap();
  if (cap != 0) n = std::min(n, cap);
  return n;
}

void set_default_threads(unsigned n) { g_threads.store(n); }

}  // namespace quasinv
