#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace shadow {

/// SHADOW_ORBITS_THREADS if set and positive, else the hardware concurrency.
int default_threads();

/// Splits [0, n) into chunks whose boundaries depend only on n, runs fn(begin, end) for each
/// chunk on up to `threads` workers and returns the results in chunk order. Merging them in
/// order therefore gives the same answer for every worker count.
template <class Fn>
auto map_chunks(std::uint64_t n, int threads, Fn&& fn) {
  using Result = decltype(fn(std::uint64_t{}, std::uint64_t{}));
  constexpr std::uint64_t kChunks = 512;
  const std::uint64_t chunk = std::max<std::uint64_t>(1, (n + kChunks - 1) / kChunks);
  const std::uint64_t count = n == 0 ? 0 : (n + chunk - 1) / chunk;
  std::vector<Result> results(count);
  std::atomic<std::uint64_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto worker = [&] {
    for (std::uint64_t c = next++; c < count; c = next++) {
      try {
        results[c] = fn(c * chunk, std::min(n, (c + 1) * chunk));
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error) error = std::current_exception();
      }
    }
  };
  const int workers = static_cast<int>(std::clamp<std::uint64_t>(static_cast<std::uint64_t>(std::max(threads, 1)), 1, std::max<std::uint64_t>(count, 1)));
  std::vector<std::thread> pool;
  for (int t = 1; t < workers; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
  return results;
}

}  // namespace shadow
