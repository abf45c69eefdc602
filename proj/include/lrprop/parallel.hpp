#pragma once

#include <algorithm>
#include <cstdlib>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace lrprop {

// Worker count from LRPROP_WORKERS; defaults to 1.
inline int worker_count() {
  const char* env = std::getenv("LRPROP_WORKERS");
  if (!env) return 1;
  const int n = std::atoi(env);
  return std::clamp(n, 1, 256);
}

// Runs fn(0..n-1) over contiguous blocks.  Results must not depend on the
// partitioning; every index is visited exactly once.
inline void parallel_for(int n, const std::function<void(int)>& fn) {
  const int workers = std::min(worker_count(), std::max(n, 1));
  if (workers <= 1) {
    for (int i = 0; i < n; ++i) fn(i);
    return;
  }
  std::vector<std::thread> threads;
  std::exception_ptr error;
  std::mutex error_mutex;
  const int block = (n + workers - 1) / workers;
  for (int w = 0; w < workers; ++w) {
    const int begin = w * block;
    const int end = std::min(n, begin + block);
    if (begin >= end) break;
    threads.emplace_back([&, begin, end] {
      try {
        for (int i = begin; i < end; ++i) fn(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!error) error = std::current_exception();
      }
    });
  }
  for (auto& t : threads) t.join();
  if (error) std::rethrow_exception(error);
}

}  // namespace lrprop
