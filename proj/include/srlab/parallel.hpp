#pragma once

#include <atomic>
#include <cstdlib>
#include <functional>
#include <thread>
#include <vector>

namespace srlab {

/// Worker cap: SRLAB_THREADS when set (>= 1), otherwise hardware concurrency.
inline int default_workers() {
  if (const char* env = std::getenv("SRLAB_THREADS")) {
    int v = std::atoi(env);
    if (v >= 1) return v;
  }
  unsigned hw = std::thread::hardware_concurrency();
  return hw ? static_cast<int>(hw) : 1;
}

/// Runs fn(task) for task in [0, n) on up to `workers` threads. Tasks write
/// only to their own slots, so results are independent of scheduling.
inline void parallel_tasks(int n, int workers,
                           const std::function<void(int)>& fn) {
  if (n <= 0) return;
  if (workers <= 1 || n == 1) {
    for (int i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<int> next{0};
  auto body = [&] {
    for (;;) {
      int task = next.fetch_add(1);
      if (task >= n) return;
      fn(task);
    }
  };
  int spawn = std::min(workers, n);
  std::vector<std::thread> pool;
  pool.reserve(spawn - 1);
  for (int i = 1; i < spawn; ++i) pool.emplace_back(body);
  body();
  for (auto& t : pool) t.join();
}

}  // namespace srlab
