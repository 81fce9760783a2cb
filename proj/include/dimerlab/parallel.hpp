#pragma once

#include <algorithm>
#include <exception>
#include <thread>
#include <vector>

namespace dimerlab {

// Runs f(i) for i in [0, count) on `threads` workers.  Each index is handled
// exactly once and f must only write to per-index state, so results do not
// depend on the thread count.
template <class F>
void parallel_for(int count, int threads, F&& f) {
  threads = std::max(1, std::min(threads, count));
  if (threads == 1) {
    for (int i = 0; i < count; ++i) f(i);
    return;
  }
  std::vector<std::exception_ptr> errors(threads);
  std::vector<std::thread> pool;
  for (int t = 0; t < threads; ++t) {
    pool.emplace_back([&, t] {
      try {
        for (int i = t; i < count; i += threads) f(i);
      } catch (...) {
        errors[t] = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

// Worker count used by library routines; 0 means hardware concurrency.
int default_threads();
void set_default_threads(int n);

}  // namespace dimerlab
