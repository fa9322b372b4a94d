#ifndef SSFMLAB_PARALLEL_HPP
#define SSFMLAB_PARALLEL_HPP

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <thread>
#include <vector>

namespace ssfmlab {

inline unsigned resolve_thread_count(int requested) {
  if (requested > 0) return static_cast<unsigned>(requested);
  unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1u : hw;
}

// Runs fn(i) for i in [0, count). Work is handed out in fixed-size blocks so
// that any per-index result written to a preallocated slot is identical for
// every thread count, including 1.
template <typename Fn>
void parallel_for(std::int64_t count, Fn&& fn, int num_threads = 0) {
  const unsigned threads = resolve_thread_count(num_threads);
  if (count <= 0) return;
  if (threads == 1 || count == 1) {
    for (std::int64_t i = 0; i < count; ++i) fn(i);
    return;
  }
  constexpr std::int64_t kBlock = 64;
  std::atomic<std::int64_t> next{0};
  auto worker = [&] {
    for (;;) {
      const std::int64_t begin = next.fetch_add(kBlock);
      if (begin >= count) return;
      const std::int64_t end = std::min(begin + kBlock, count);
      for (std::int64_t i = begin; i < end; ++i) fn(i);
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(threads - 1);
  for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();
}

// Partitions [0, count) into consecutive blocks of block_size and runs
// fn(block_index, begin, end) once per block. Callers that reduce per-block
// partial results in block order get bit-identical sums at any thread count.
template <typename Fn>
void parallel_blocks(std::int64_t count, std::int64_t block_size, Fn&& fn,
                     int num_threads = 0) {
  if (count <= 0) return;
  const std::int64_t blocks = (count + block_size - 1) / block_size;
  parallel_for(
      blocks,
      [&](std::int64_t b) {
        const std::int64_t begin = b * block_size;
        const std::int64_t end = std::min(begin + block_size, count);
        fn(b, begin, end);
      },
      num_threads);
}

inline std::int64_t block_count(std::int64_t count, std::int64_t block_size) {
  return count <= 0 ? 0 : (count + block_size - 1) / block_size;
}

}  // namespace ssfmlab

#endif
