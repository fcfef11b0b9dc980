#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <thread>
#include <vector>

namespace homs {

inline unsigned default_thread_count() {
  unsigned n = std::thread::hardware_concurrency();
  return n == 0 ? 1 : n;
}

/// Runs fn(begin, end) over [0, count) split into chunks of at most `grain`
/// items, claimed dynamically by up to `threads` workers. Callers must write
/// only to disjoint output slots, which keeps results independent of
/// scheduling.
template <typename Fn>
void parallel_for(std::size_t count, unsigned threads, std::size_t grain, Fn&& fn) {
  if (count == 0) return;
  grain = std::max<std::size_t>(grain, 1);
  const std::size_t chunks = (count + grain - 1) / grain;
  const unsigned workers =
      static_cast<unsigned>(std::min<std::size_t>(std::max(threads, 1u), chunks));

  if (workers <= 1) {
    fn(std::size_t{0}, count);
    return;
  }

  std::atomic<std::size_t> next{0};
  auto body = [&] {
    for (;;) {
      const std::size_t chunk = next.fetch_add(1, std::memory_order_relaxed);
      if (chunk >= chunks) break;
      const std::size_t begin = chunk * grain;
      fn(begin, std::min(begin + grain, count));
    }
  };

  std::vector<std::thread> pool;
  pool.reserve(workers - 1);
  for (unsigned i = 1; i < workers; ++i) pool.emplace_back(body);
  body();
  for (auto& t : pool) t.join();
}

}  // namespace homs
