#include "canp/sweep.hpp"

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <string_view>

#include <omp.h>

namespace canp::sweep {

namespace {

int env_threads() {
  const char* raw = std::getenv("CANP_THREADS");
  if (raw == nullptr) return 0;
  const std::string_view s{raw};
  int value = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  return ec == std::errc{} && ptr == s.data() + s.size() && value > 0 ? value : 0;
}

}  // namespace

int default_threads() {
  const int env = env_threads();
  return env > 0 ? env : std::max(1, omp_get_max_threads());
}

int resolve_threads(int requested) {
  const int cap = env_threads();
  int n = requested > 0 ? requested : default_threads();
  if (cap > 0) n = std::min(n, cap);
  return std::max(1, n);
}

}  // namespace canp::sweep
