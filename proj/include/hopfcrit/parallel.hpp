#pragma once

// Minimal deterministic work sharing.  Loops hand out contiguous index
// blocks; every result is written to a slot owned by its index, so the
// thread count can never change what gets computed, only how fast.

#include <algorithm>
#include <cstdlib>
#include <exception>
#include <string>
#include <thread>
#include <vector>

namespace hopfcrit {

/// Worker count: an explicit positive request wins, then the
/// HOPF_CRITICAL_THREADS environment variable, then hardware concurrency.
inline int resolve_thread_count(int requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("HOPF_CRITICAL_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0 && v <= 1024) return static_cast<int>(v);
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? static_cast<int>(hw) : 1;
}

template <typename F>
void parallel_for(std::size_t count, int threads, F&& f) {
  if (count == 0) return;
  threads = std::clamp<int>(threads, 1, static_cast<int>(std::min<std::size_t>(count, 256)));
  if (threads == 1) {
    for (std::size_t i = 0; i < count; ++i) f(i);
    return;
  }
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(static_cast<std::size_t>(threads));
  const std::size_t chunk = (count + static_cast<std::size_t>(threads) - 1) / threads;
  for (int w = 0; w < threads; ++w) {
    const std::size_t lo = chunk * static_cast<std::size_t>(w);
    const std::size_t hi = std::min(count, lo + chunk);
    if (lo >= hi) break;
    pool.emplace_back([&, lo, hi, w] {
      try {
        for (std::size_t i = lo; i < hi; ++i) f(i);
      } catch (...) {
        errors[static_cast<std::size_t>(w)] = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

}  // namespace hopfcrit
