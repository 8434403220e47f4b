#ifndef NOVIKOV_PARALLEL_HPP
#define NOVIKOV_PARALLEL_HPP

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <string>
#include <thread>
#include <vector>

namespace novikov {

/// Worker count from NOVIKOV_THREADS, else the hardware concurrency.
inline int default_thread_count() {
  if (const char* env = std::getenv("NOVIKOV_THREADS")) {
    try {
      const int n = std::stoi(env);
      if (n > 0) return n;
    } catch (const std::exception&) {
    }
  }
  return static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
}

/// Evaluates fn(i) for i in [0, count) on up to `threads` workers and returns
/// the results in index order. The first exception in index order is rethrown.
template <typename Fn>
auto ordered_parallel_map(std::size_t count, Fn&& fn, int threads = 0) {
  using Result = decltype(fn(std::size_t{0}));
  std::vector<Result> results(count);
  std::vector<std::exception_ptr> errors(count);
  const std::size_t workers =
      std::min<std::size_t>(count, static_cast<std::size_t>(threads > 0 ? threads : default_thread_count()));

  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) results[i] = fn(i);
    return results;
  }

  std::atomic<std::size_t> next{0};
  {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (std::size_t t = 0; t < workers; ++t) {
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < count; i = next++) {
          try {
            results[i] = fn(i);
          } catch (...) {
            errors[i] = std::current_exception();
          }
        }
      });
    }
  }
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);
  return results;
}

}  // namespace novikov

#endif  // NOVIKOV_PARALLEL_HPP
