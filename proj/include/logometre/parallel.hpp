#pragma once

#include <algorithm>
#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace logometre {

/// Worker count from LOGOMETRE_WORKERS, falling back to 1.
std::size_t default_workers();

/// Evaluates `fn(i)` for every i in [0, count) on up to `workers` threads and
/// returns the results in index order. Workers take contiguous index blocks,
/// so any reduction over the returned vector is independent of `workers`.
template <typename Fn>
auto parallel_map(std::size_t count, std::size_t workers, Fn&& fn)
    -> std::vector<decltype(fn(std::size_t{}))> {
  using Result = decltype(fn(std::size_t{}));
  std::vector<Result> results(count);
  workers = std::clamp<std::size_t>(workers, 1, std::max<std::size_t>(count, 1));
  if (workers == 1) {
    for (std::size_t i = 0; i < count; ++i) results[i] = fn(i);
    return results;
  }

  std::vector<std::exception_ptr> failures(workers);
  std::vector<std::thread> pool;
  pool.reserve(workers);
  const std::size_t block = (count + workers - 1) / workers;
  for (std::size_t w = 0; w < workers; ++w) {
    const std::size_t lo = w * block;
    const std::size_t hi = std::min(count, lo + block);
    pool.emplace_back([&, w, lo, hi] {
      try {
        for (std::size_t i = lo; i < hi; ++i) results[i] = fn(i);
      } catch (...) {
        failures[w] = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  for (auto& f : failures) {
    if (f) std::rethrow_exception(f);
  }
  return results;
}

/// Splits [0, count) into at most `workers` contiguous blocks and evaluates
/// `fn(lo, hi)` for each block concurrently. Results come back in block order.
template <typename Fn>
auto parallel_blocks(std::size_t count, std::size_t workers, Fn&& fn)
    -> std::vector<decltype(fn(std::size_t{}, std::size_t{}))> {
  workers = std::clamp<std::size_t>(workers, 1, std::max<std::size_t>(count, 1));
  const std::size_t block = count == 0 ? 0 : (count + workers - 1) / workers;
  return parallel_map(workers, workers, [&](std::size_t w) {
    const std::size_t lo = std::min(count, w * block);
    const std::size_t hi = std::min(count, lo + block);
    return fn(lo, hi);
  });
}

}  // namespace logometre
