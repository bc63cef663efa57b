#pragma once

#include <algorithm>
#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace dseries {

/// Split [0, count) into `threads` contiguous blocks and run fn(begin, end)
/// on each. Block boundaries depend only on (count, threads); callers write
/// into per-index slots so results do not depend on scheduling.
template <typename Fn> void parallel_for(std::size_t count, int threads, Fn &&fn)
{
  std::size_t const workers = std::clamp<std::size_t>(static_cast<std::size_t>(std::max(threads, 1)), 1, std::max<std::size_t>(count, 1));
  if (workers == 1) {
    fn(std::size_t{0}, count);
    return;
  }
  std::vector<std::exception_ptr> errors(workers);
  {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
      std::size_t const begin = count * w / workers;
      std::size_t const end = count * (w + 1) / workers;
      pool.emplace_back([&fn, &errors, w, begin, end] {
        try {
          fn(begin, end);
        } catch (...) {
          errors[w] = std::current_exception();
        }
      });
    }
  }
  // first failing block in index order
  for (auto const &e : errors) {
    if (e) { std::rethrow_exception(e); }
  }
}

} // namespace dseries
