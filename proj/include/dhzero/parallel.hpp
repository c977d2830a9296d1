#pragma once

#include <algorithm>
#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace dhzero::detail {

/// Runs body(i) for i in [0, n) on up to `workers` threads, each thread owning
/// one contiguous block. The first exception thrown by any block is rethrown.
template <typename Body>
void parallel_for(size_t n, int workers, Body&& body) {
  const size_t count = std::clamp<size_t>(workers < 1 ? 1 : static_cast<size_t>(workers), 1, std::max<size_t>(n, 1));
  if (count == 1) {
    for (size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::vector<std::exception_ptr> errors(count);
  std::vector<std::thread> threads;
  threads.reserve(count);
  for (size_t w = 0; w < count; ++w) {
    const size_t begin = n * w / count;
    const size_t end = n * (w + 1) / count;
    threads.emplace_back([&, w, begin, end] {
      try {
        for (size_t i = begin; i < end; ++i) body(i);
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

}  // namespace dhzero::detail
