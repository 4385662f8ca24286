#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

namespace bbmlab {

/// Environment variable capping the number of worker threads.
inline constexpr const char* kWorkersEnv = "BBMLAB_WORKERS";

/// Resolves a requested worker count: 0 means "hardware concurrency", and the
/// environment cap always applies.
inline unsigned resolve_workers(unsigned requested) {
  unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  unsigned n = requested == 0 ? hw : requested;
  if (const char* cap = std::getenv(kWorkersEnv); cap != nullptr && *cap != '\0') {
    try {
      long v = std::stol(cap);
      if (v >= 1) n = std::min<unsigned>(n, static_cast<unsigned>(v));
    } catch (...) {
      // malformed cap is ignored
    }
  }
  return std::max(1u, n);
}

/// Runs fn(i) for i in [0, count). Every index is handled by exactly one
/// worker and results must be written to per-index slots; callers reduce
/// those slots sequentially, so the outcome never depends on the worker count.
template <class Fn>
void parallel_for(std::size_t count, unsigned workers, Fn&& fn) {
  workers = resolve_workers(workers);
  if (workers <= 1 || count < 2) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  workers = static_cast<unsigned>(std::min<std::size_t>(workers, count));
  std::exception_ptr first_error;
  std::mutex error_mutex;
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      try {
        // strided assignment balances offset tables sorted by length
        for (std::size_t i = w; i < count; i += workers) fn(i);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!first_error) first_error = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  if (first_error) std::rethrow_exception(first_error);
}

}  // namespace bbmlab
