#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "canp/sweep.hpp"

using namespace canp;

TEST_CASE("parallel map reproduces the serial reference") {
  const auto f = [](std::size_t i) { return std::sin(0.1 * static_cast<double>(i)) * std::exp(-1e-3 * i); };
  const auto serial = sweep::map_serial(1000, f);
  for (const int threads : {1, 2, 4, 7}) CHECK(sweep::map_parallel(1000, f, threads) == serial);
  CHECK(sweep::map(1000, f, 1) == serial);
  CHECK(sweep::map(0, f, 4).empty());
}

TEST_CASE("the first failing index is rethrown") {
  const auto f = [](std::size_t i) -> int {
    if (i == 17) throw std::runtime_error("17");
    if (i == 300) throw std::logic_error("300");
    return static_cast<int>(i);
  };
  for (const int threads : {1, 4}) {
    try {
      (void)sweep::map(500, f, threads);
      FAIL("expected an exception");
    } catch (const std::runtime_error& e) {
      CHECK(std::string(e.what()) == "17");
    }
  }
}

TEST_CASE("thread resolution") {
  CHECK(sweep::default_threads() >= 1);
  CHECK(sweep::resolve_threads(0) == sweep::default_threads());
  CHECK(sweep::resolve_threads(1) == 1);
}
