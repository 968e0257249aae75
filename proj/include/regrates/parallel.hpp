#pragma once

#include <cstdlib>
#include <functional>
#include <thread>
#include <vector>

namespace regrates {

/// Sweep width: hardware concurrency capped by the REGRATES_THREADS
/// environment variable (<= 0 or unset means no extra cap).
inline unsigned sweep_threads() {
  unsigned n = std::thread::hardware_concurrency();
  if (n == 0) n = 1;
  if (const char* env = std::getenv("REGRATES_THREADS")) {
    const long cap = std::strtol(env, nullptr, 10);
    if (cap > 0 && static_cast<unsigned>(cap) < n) n = static_cast<unsigned>(cap);
  }
  return n;
}

/// Runs fn(i) for i in [0, n). Work items must be independent; callers keep
/// results ordered by writing into index i of a pre-sized container, so the
/// output never depends on scheduling.
inline void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn) {
  const unsigned width = sweep_threads();
  if (width <= 1 || n <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(width);
  for (unsigned t = 0; t < width; ++t) {
    pool.emplace_back([&, t]() {
      for (std::size_t i = t; i < n; i += width) fn(i);
    });
  }
  for (auto& th : pool) th.join();
}

}  // namespace regrates
