#pragma once

#include <algorithm>
#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace stabilis {

/// Worker cap from STABILIS_THREADS (0 or 1 = serial). Defaults to the
/// hardware concurrency when unset.
std::size_t thread_cap();

/// Calls fn(i) for i in [0, n). Work is split into contiguous chunks; callers
/// write results by index so any reduction afterwards is order independent.
/// If several chunks throw, the exception from the lowest chunk wins.
template <class Fn>
void parallel_for(std::size_t n, Fn&& fn) {
  constexpr std::size_t min_parallel = 256;
  const std::size_t workers = std::min(thread_cap(), n / (min_parallel / 4) + 1);
  if (workers <= 1 || n < min_parallel) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::vector<std::exception_ptr> errors(workers);
  {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    const std::size_t chunk = (n + workers - 1) / workers;
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        try {
          const std::size_t end = std::min(n, (w + 1) * chunk);
          for (std::size_t i = w * chunk; i < end; ++i) fn(i);
        } catch (...) {
          errors[w] = std::current_exception();
        }
      });
    }
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

}  // namespace stabilis
