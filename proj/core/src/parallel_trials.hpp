#pragma once

#include <atomic>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace girthlab::internal {

// Runs body(trial, local) for every trial in [0, trials) across a thread
// pool, where local is the calling thread's accumulator of n counters; the
// per-thread accumulators are summed at the end. Integer accumulation makes
// the total independent of the worker count and of scheduling. The first
// exception thrown by any trial is rethrown after the pool drains.
inline std::vector<long> parallel_counts(
    long trials, int workers, size_t n,
    const std::function<void(long, std::vector<long>&)>& body) {
  if (workers <= 0) workers = static_cast<int>(std::thread::hardware_concurrency());
  if (workers < 1) workers = 1;
  if (static_cast<long>(workers) > trials) workers = static_cast<int>(trials);

  std::vector<long> total(n, 0);
  std::atomic<long> next{0};
  std::mutex merge;
  std::exception_ptr failure;

  auto run = [&]() {
    std::vector<long> local(n, 0);
    try {
      for (;;) {
        const long t = next.fetch_add(1, std::memory_order_relaxed);
        if (t >= trials) break;
        body(t, local);
      }
    } catch (...) {
      std::lock_guard<std::mutex> lock(merge);
      if (!failure) failure = std::current_exception();
      return;
    }
    std::lock_guard<std::mutex> lock(merge);
    for (size_t i = 0; i < n; ++i) total[i] += local[i];
  };

  if (workers == 1) {
    run();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<size_t>(workers));
    for (int i = 0; i < workers; ++i) pool.emplace_back(run);
    for (auto& th : pool) th.join();
  }
  if (failure) std::rethrow_exception(failure);
  return total;
}

}  // namespace girthlab::internal
