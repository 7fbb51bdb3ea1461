#pragma once

// Chunked parallel map over an index range. Thread count is
// min(hardware, CONFALG_THREADS); results come back in index order, so
// callers stay deterministic.

#include <cstdlib>
#include <future>
#include <thread>
#include <vector>

namespace confalg::detail {

inline unsigned thread_budget() {
  unsigned hw = std::thread::hardware_concurrency();
  if (hw == 0) hw = 1;
  if (const char* env = std::getenv("CONFALG_THREADS")) {
    long cap = std::strtol(env, nullptr, 10);
    if (cap >= 1 && static_cast<unsigned>(cap) < hw) hw = static_cast<unsigned>(cap);
  }
  return hw;
}

template <class R, class Fn>
std::vector<R> parallel_map(std::size_t n, Fn fn) {
  std::vector<R> out(n);
  unsigned threads = thread_budget();
  if (threads <= 1 || n < 8) {
    for (std::size_t i = 0; i < n; ++i) out[i] = fn(i);
    return out;
  }
  if (threads > n) threads = static_cast<unsigned>(n);
  std::vector<std::future<void>> futs;
  std::size_t chunk = (n + threads - 1) / threads;
  for (unsigned t = 0; t < threads; ++t) {
    std::size_t lo = t * chunk, hi = std::min(n, lo + chunk);
    if (lo >= hi) break;
    futs.push_back(std::async(std::launch::async, [&, lo, hi] {
      for (std::size_t i = lo; i < hi; ++i) out[i] = fn(i);
    }));
  }
  for (auto& f : futs) f.get();
  return out;
}

}  // namespace confalg::detail
