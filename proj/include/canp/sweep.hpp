#pragma once

#include <cstddef>
#include <exception>
#include <type_traits>
#include <vector>

namespace canp::sweep {

/// CANP_THREADS if set and positive, else the OpenMP default.
int default_threads();

/// Clamp a requested thread count: 0 means default_threads(), and CANP_THREADS is a hard cap.
int resolve_threads(int requested);

/// Reference kernel: f(0), ..., f(n-1) in order on the calling thread.
template <class F>
auto map_serial(std::size_t n, F&& f) -> std::vector<std::invoke_result_t<F&, std::size_t>> {
  std::vector<std::invoke_result_t<F&, std::size_t>> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = f(i);
  return out;
}

/// Same result as map_serial, with grid points distributed dynamically over
/// `threads` OpenMP workers. Results land at their input index, so the output
/// does not depend on the schedule. The first failing index's exception is rethrown.
template <class F>
auto map_parallel(std::size_t n, F&& f, int threads) -> std::vector<std::invoke_result_t<F&, std::size_t>> {
  std::vector<std::invoke_result_t<F&, std::size_t>> out(n);
  std::vector<std::exception_ptr> errors(n);
  const auto count = static_cast<long long>(n);
#pragma omp parallel for schedule(dynamic) num_threads(threads)
  for (long long i = 0; i < count; ++i) {
    const auto k = static_cast<std::size_t>(i);
    try {
      out[k] = f(k);
    } catch (...) {
      errors[k] = std::current_exception();
    }
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return out;
}

template <class F>
auto map(std::size_t n, F&& f, int threads) {
  return threads <= 1 ? map_serial(n, f) : map_parallel(n, f, threads);
}

}  // namespace canp::sweep
