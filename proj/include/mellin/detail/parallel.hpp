#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdlib>
#include <exception>
#include <string>
#include <thread>
#include <vector>

namespace mellin::detail {

/// Worker count: hardware concurrency, capped by MELLIN_PRICER_THREADS.
inline std::size_t worker_count() {
  std::size_t workers = std::max(1u, std::thread::hardware_concurrency());
  if (const char* cap = std::getenv("MELLIN_PRICER_THREADS")) {
    try {
      const long requested = std::stol(cap);
      if (requested >= 1) workers = std::min(workers, static_cast<std::size_t>(requested));
    } catch (...) {
      // unparsable values are ignored
    }
  }
  return workers;
}

/// Runs body(begin, end) over contiguous blocks of [0, count). Each index is
/// visited exactly once, so results written per index do not depend on the
/// number of workers.
template <class Body>
void parallel_for(std::size_t count, Body&& body, std::size_t min_block = 1024) {
  const std::size_t workers = std::min(worker_count(), std::max<std::size_t>(1, count / min_block));
  if (workers <= 1) {
    body(std::size_t{0}, count);
    return;
  }
  std::vector<std::thread> threads;
  std::vector<std::exception_ptr> errors(workers);
  const std::size_t block = (count + workers - 1) / workers;
  for (std::size_t w = 0; w < workers; ++w) {
    const std::size_t begin = w * block;
    const std::size_t end = std::min(count, begin + block);
    if (begin >= end) break;
    threads.emplace_back([&, w, begin, end] {
      try {
        body(begin, end);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& t : threads) t.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

}  // namespace mellin::detail
