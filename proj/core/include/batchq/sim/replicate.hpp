#pragma once

#include <atomic>
#include <cstdint>
#include <exception>
#include <functional>
#include <mutex>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "batchq/rng.hpp"

namespace batchq::sim {

/// Run n independent replications of a job, each on its own stream
/// (seed, first_stream + index * stream_stride), and return the results
/// ordered by replication index. The merge order never depends on thread
/// scheduling, so serial and concurrent runs produce identical output.
/// A failing job aborts the whole batch with its replication index.
template <typename R>
std::vector<R> replicate(int n, std::uint64_t seed, std::uint64_t first_stream,
                         const std::function<R(int, RngStream&)>& job,
                         unsigned max_threads = 0, std::uint64_t stream_stride = 1) {
  if (n < 1) throw std::invalid_argument("replicate: n must be >= 1");
  if (stream_stride == 0) throw std::invalid_argument("replicate: stream_stride must be >= 1");
  std::vector<R> results(static_cast<std::size_t>(n));

  unsigned threads = max_threads == 0 ? std::thread::hardware_concurrency() : max_threads;
  if (threads == 0) threads = 1;
  threads = std::min<unsigned>(threads, static_cast<unsigned>(n));

  std::atomic<int> next{0};
  std::atomic<int> failed_index{-1};
  std::exception_ptr error;
  std::mutex error_mutex;

  auto worker = [&] {
    for (;;) {
      const int i = next.fetch_add(1);
      if (i >= n || failed_index.load() >= 0) return;
      RngStream rng(seed, first_stream + static_cast<std::uint64_t>(i) * stream_stride);
      try {
        results[static_cast<std::size_t>(i)] = job(i, rng);
      } catch (...) {
        int expected = -1;
        if (failed_index.compare_exchange_strong(expected, i)) {
          std::lock_guard<std::mutex> lock(error_mutex);
          error = std::current_exception();
        }
        return;
      }
    }
  };

  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (unsigned i = 0; i < threads; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }

  if (failed_index.load() >= 0) {
    try {
      std::rethrow_exception(error);
    } catch (const std::exception& e) {
      throw std::runtime_error("replicate: replication " + std::to_string(failed_index.load()) +
                               " failed: " + e.what());
    }
  }
  return results;
}

}  // namespace batchq::sim
