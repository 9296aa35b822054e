#pragma once

#include <algorithm>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace wbdg {

// Worker count from BALANCE_DG_THREADS (0 or unset = hardware concurrency).
// An explicit count is honored even above the core count.
inline int worker_count() {
  static const int n = [] {
    int hw = static_cast<int>(std::thread::hardware_concurrency());
    if (hw <= 0) hw = 1;
    const char* env = std::getenv("BALANCE_DG_THREADS");
    if (!env) return hw;
    int req = std::atoi(env);
    if (req <= 0) return hw;
    return std::min(req, 256);
  }();
  return n;
}

// Calls fn(begin, end) on contiguous chunks of [0, n). Chunking is static, so
// work assignment does not depend on timing. The first exception thrown by
// any chunk is rethrown on the calling thread.
template <class Fn>
void parallel_for(int n, Fn&& fn, int min_chunk = 16) {
  int workers = std::min(worker_count(), std::max(1, n / std::max(1, min_chunk)));
  if (workers <= 1) {
    if (n > 0) fn(0, n);
    return;
  }
  std::exception_ptr err;
  std::mutex err_mutex;
  auto run = [&](int b, int e) {
    try {
      fn(b, e);
    } catch (...) {
      std::lock_guard<std::mutex> lock(err_mutex);
      if (!err) err = std::current_exception();
    }
  };
  std::vector<std::thread> threads;
  threads.reserve(workers - 1);
  for (int w = 1; w < workers; ++w) {
    int b = static_cast<int>(static_cast<long long>(n) * w / workers);
    int e = static_cast<int>(static_cast<long long>(n) * (w + 1) / workers);
    threads.emplace_back(run, b, e);
  }
  run(0, static_cast<int>(static_cast<long long>(n) / workers));
  for (auto& t : threads) t.join();
  if (err) std::rethrow_exception(err);
}

}  // namespace wbdg
