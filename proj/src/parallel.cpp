#include "zonal/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace zonal {

int thread_count() {
  if (const char* env = std::getenv("ZONAL_THREADS")) {
    const int v = std::atoi(env);
    if (v > 0) return v;
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

void parallel_for(std::size_t tasks, const std::function<void(std::size_t)>& fn) {
  const std::size_t workers = std::min<std::size_t>(tasks, thread_count());
  if (workers <= 1) {
    for (std::size_t t = 0; t < tasks; ++t) fn(t);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::jthread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t t = next++; t < tasks; t = next++) {
        try {
          fn(t);
        } catch (...) {
          std::lock_guard lock(failure_mutex);
          if (!failure) failure = std::current_exception();
        }
      }
    });
  }
  pool.clear();
  if (failure) std::rethrow_exception(failure);
}

BatchPlan plan_batches(std::uint64_t samples, std::size_t max_batches, std::uint64_t min_batch) {
  std::uint64_t batches = samples / std::max<std::uint64_t>(min_batch, 1);
  batches = std::clamp<std::uint64_t>(batches, 1, max_batches);
  return {samples, static_cast<std::size_t>(batches)};
}

}  // namespace zonal
