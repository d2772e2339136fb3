#pragma once

#include <algorithm>
#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace netstab {

// Runs fn(lo, hi) over a block partition of [0, count). jobs <= 1 runs inline.
// The partition depends only on (count, jobs), so workers writing to disjoint
// index-keyed slots produce output independent of the job count. The first
// pending exception in block order is rethrown after all workers join.
template <typename Fn>
void parallel_blocks(std::size_t count, unsigned jobs, Fn&& fn) {
  if (count == 0) return;
  const std::size_t workers =
      std::max<std::size_t>(1, std::min<std::size_t>(jobs, count));
  if (workers == 1) {
    fn(std::size_t{0}, count);
    return;
  }
  const std::size_t chunk = (count + workers - 1) / workers;
  std::vector<std::exception_ptr> errors(workers);
  std::vector<std::thread> threads;
  threads.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    const std::size_t lo = w * chunk;
    const std::size_t hi = std::min(count, lo + chunk);
    if (lo >= hi) break;
    threads.emplace_back([&fn, &errors, w, lo, hi] {
      try {
        fn(lo, hi);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& t : threads) t.join();
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

template <typename Fn>
void parallel_indices(std::size_t count, unsigned jobs, Fn&& fn) {
  parallel_blocks(count, jobs, [&fn](std::size_t lo, std::size_t hi) {
    for (std::size_t i = lo; i < hi; ++i) fn(i);
  });
}

}  // namespace netstab
