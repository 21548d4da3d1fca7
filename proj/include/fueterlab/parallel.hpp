#pragma once

#include <atomic>
#include <cstdlib>
#include <exception>
#include <thread>
#include <vector>

namespace fueterlab {

/// Worker count: hardware concurrency capped by FUETERLAB_THREADS.
inline int thread_budget() {
  int hw = static_cast<int>(std::thread::hardware_concurrency());
  if (hw <= 0) hw = 1;
  if (const char* env = std::getenv("FUETERLAB_THREADS")) {
    const int v = std::atoi(env);
    if (v > 0 && v < hw) hw = v;
  }
  return hw;
}

/// Deterministic indexed parallel map: fn(i) must write only to slot i of its
/// output. Rethrows the first task exception after joining.
template <typename F>
void parallel_for(int n, F&& fn) {
  const int nt = std::min(thread_budget(), n);
  if (nt <= 1) {
    for (int i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<int> next{0};
  std::exception_ptr err;
  std::mutex err_mutex;
  std::vector<std::thread> pool;
  pool.reserve(nt);
  for (int t = 0; t < nt; ++t)
    pool.emplace_back([&] {
      for (;;) {
        const int i = next.fetch_add(1);
        if (i >= n) return;
        try {
          fn(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(err_mutex);
          if (!err) err = std::current_exception();
        }
      }
    });
  for (auto& t : pool) t.join();
  if (err) std::rethrow_exception(err);
}

}  // namespace fueterlab
