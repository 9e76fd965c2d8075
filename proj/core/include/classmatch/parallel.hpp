#pragma once

#include <atomic>
#include <cstdint>
#include <cstdlib>
#include <thread>
#include <vector>

namespace classmatch {

/// Worker cap: CLASSMATCH_THREADS if set, else hardware concurrency.
inline int workerCount() {
  if (const char* env = std::getenv("CLASSMATCH_THREADS")) {
    const int v = std::atoi(env);
    if (v >= 1) return v;
  }
  const unsigned hc = std::thread::hardware_concurrency();
  return hc ? static_cast<int>(hc) : 1;
}

/// Runs fn(i) for i in [0, count). Each index is processed exactly once;
/// callers write results into per-index slots and reduce in index order
/// afterwards, so the outcome is independent of scheduling.
template <typename Fn>
void parallelFor(std::int64_t count, Fn&& fn) {
  const int workers = std::min<std::int64_t>(workerCount(), count);
  if (workers <= 1) {
    for (std::int64_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::int64_t> next{0};
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      while (true) {
        const std::int64_t i = next.fetch_add(1, std::memory_order_relaxed);
        if (i >= count) return;
        fn(i);
      }
    });
  }
  for (auto& t : pool) t.join();
}

}  // namespace classmatch
