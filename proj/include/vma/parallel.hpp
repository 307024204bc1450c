#pragma once

#include <atomic>
#include <cstddef>
#include <thread>
#include <vector>

// Bounded work pool for dataset-level runs. Each index writes its own
// output slot, so results are identical regardless of scheduling.

namespace vma {

// Worker count: VM_AUCTIONS_THREADS when set, else hardware concurrency.
std::size_t default_thread_count();

template <typename F>
void parallel_for(std::size_t count, std::size_t threads, F&& fn) {
  if (threads == 0) threads = default_thread_count();
  if (threads <= 1 || count <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  threads = std::min(threads, count);
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (std::size_t t = 0; t < threads; ++t) {
    pool.emplace_back([&] {
      for (std::size_t i = next.fetch_add(1); i < count; i = next.fetch_add(1)) fn(i);
    });
  }
  for (auto& th : pool) th.join();
}

}  // namespace vma
