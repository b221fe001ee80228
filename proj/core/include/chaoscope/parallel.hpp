#pragma once

#include <algorithm>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <utility>
#include <vector>

namespace chaoscope {

// Runs fn(i) for every i in [0, count) over at most thread_count workers,
// each taking one contiguous block. Callers write results into disjoint
// per-index slots, so the outcome is identical to a sequential run no matter
// how many workers there are.
template <typename Fn>
void parallel_for_indexed(std::size_t count, int thread_count, Fn&& fn) {
  if (count == 0) return;
  std::size_t workers =
      thread_count < 1 ? 1 : static_cast<std::size_t>(thread_count);
  workers = std::min(workers, count);
  if (workers == 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }

  const std::size_t chunk = (count + workers - 1) / workers;
  std::mutex error_mutex;
  std::exception_ptr first_error;
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    const std::size_t begin = w * chunk;
    const std::size_t end = std::min(begin + chunk, count);
    if (begin >= end) break;
    pool.emplace_back([&, begin, end] {
      try {
        for (std::size_t i = begin; i < end; ++i) fn(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!first_error) first_error = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  if (first_error) std::rethrow_exception(first_error);
}

}  // namespace chaoscope
