#pragma once

#include <cstdint>
#include <functional>

namespace zonal {

/// Worker count: ZONAL_THREADS if set and positive, else hardware concurrency.
int thread_count();

/// Runs fn(task) for task in [0, tasks) on up to thread_count() threads.
/// Callers write results into per-task slots, so output never depends on scheduling.
void parallel_for(std::size_t tasks, const std::function<void(std::size_t)>& fn);

/// Fixed partition of [0, samples) into at most max_batches contiguous ranges.
struct BatchPlan {
  std::uint64_t samples;
  std::size_t batches;

  std::uint64_t begin(std::size_t b) const { return samples * b / batches; }
  std::uint64_t end(std::size_t b) const { return samples * (b + 1) / batches; }
};

BatchPlan plan_batches(std::uint64_t samples, std::size_t max_batches = 64,
                       std::uint64_t min_batch = 4096);

}  // namespace zonal
