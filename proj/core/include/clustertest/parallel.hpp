#pragma once

#include <atomic>
#include <cstddef>
#include <functional>
#include <thread>
#include <vector>

namespace clustertest {

// Runs fn(i) for i in [0, count) on up to `threads` workers (0 = hardware).
// Each index owns its output slot, so results are scheduling-independent.
inline void parallel_for(std::size_t count, unsigned threads,
                         const std::function<void(std::size_t)>& fn) {
  if (count == 0) return;
  unsigned t = threads == 0 ? std::thread::hardware_concurrency() : threads;
  if (t == 0) t = 1;
  if (t > count) t = static_cast<unsigned>(count);
  if (t == 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  pool.reserve(t);
  for (unsigned w = 0; w < t; ++w) {
    pool.emplace_back([&] {
      for (;;) {
        const std::size_t i = next.fetch_add(1);
        if (i >= count) return;
        fn(i);
      }
    });
  }
  for (auto& th : pool) th.join();
}

}  // namespace clustertest
