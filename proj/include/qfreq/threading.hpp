#pragma once

#include <cstddef>
#include <functional>
#include <thread>
#include <vector>

namespace qfreq {

// 0 means "use the hardware count". Always at least 1.
inline int resolve_threads(int requested) {
  if (requested > 0) return requested;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

// Runs chunk_fn(begin, end) over a contiguous partition of [0, n). Chunk
// boundaries depend only on (n, threads), and callers write results to
// disjoint index slots, so output is deterministic for a given n.
inline void parallel_for_chunks(
    std::size_t n, int threads,
    const std::function<void(std::size_t, std::size_t)>& chunk_fn) {
  const int t = resolve_threads(threads);
  if (t <= 1 || n < 2) {
    chunk_fn(0, n);
    return;
  }
  const std::size_t workers = std::min<std::size_t>(static_cast<std::size_t>(t), n);
  const std::size_t base = n / workers;
  const std::size_t extra = n % workers;
  std::vector<std::thread> pool;
  pool.reserve(workers - 1);
  std::size_t begin = 0;
  for (std::size_t w = 0; w < workers; ++w) {
    const std::size_t len = base + (w < extra ? 1 : 0);
    const std::size_t end = begin + len;
    if (w + 1 == workers) {
      chunk_fn(begin, end);
    } else {
      pool.emplace_back(chunk_fn, begin, end);
    }
    begin = end;
  }
  for (auto& th : pool) th.join();
}

}  // namespace qfreq
