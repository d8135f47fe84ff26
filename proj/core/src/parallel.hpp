#pragma once

#include <algorithm>
#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace unifit::detail {

inline unsigned resolve_workers(unsigned requested, std::size_t count) {
  unsigned w = requested == 0 ? std::max(1u, std::thread::hardware_concurrency()) : requested;
  if (count < w) w = static_cast<unsigned>(std::max<std::size_t>(count, 1));
  return w;
}

// Calls fn(begin, end) on contiguous blocks of [0, count). Callers write
// per-index results into preallocated storage, so the outcome does not
// depend on the number of workers.
template <typename Fn>
void parallel_blocks(std::size_t count, unsigned workers, Fn&& fn) {
  const unsigned w = resolve_workers(workers, count);
  if (w <= 1) {
    fn(std::size_t{0}, count);
    return;
  }
  std::vector<std::exception_ptr> errors(w);
  std::vector<std::thread> threads;
  threads.reserve(w);
  const std::size_t chunk = (count + w - 1) / w;
  for (unsigned t = 0; t < w; ++t) {
    const std::size_t begin = std::min(count, t * chunk);
    const std::size_t end = std::min(count, begin + chunk);
    threads.emplace_back([&, t, begin, end] {
      try {
        fn(begin, end);
      } catch (...) {
        errors[t] = std::current_exception();
      }
    });
  }
  for (auto& th : threads) th.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

}  // namespace unifit::detail
