#pragma once

// Fixed-size worker pool for independent jobs. Results are stored by job
// index, so the output does not depend on scheduling.

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace landau {

template <class Fn>
auto parallel_map(int count, int workers, Fn&& fn) -> std::vector<decltype(fn(0))> {
  using Result = decltype(fn(0));
  std::vector<Result> results(count);
  if (count <= 0) return results;
  workers = std::clamp(workers, 1, count);
  if (workers == 1) {
    for (int i = 0; i < count; ++i) results[i] = fn(i);
    return results;
  }

  std::atomic<int> next{0};
  std::exception_ptr failure;
  int failed_index = count;
  std::mutex failure_mutex;
  {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (int i = next++; i < count; i = next++) {
          try {
            results[i] = fn(i);
          } catch (...) {
            // Keep the failure of the lowest job index so errors are
            // reproducible regardless of thread timing.
            std::lock_guard lock(failure_mutex);
            if (i < failed_index) {
              failed_index = i;
              failure = std::current_exception();
            }
          }
        }
      });
    }
  }
  if (failure) std::rethrow_exception(failure);
  return results;
}

}  // namespace landau
