#pragma once

#include <cstddef>
#include <functional>

namespace swarmlife::harness {

// Worker cap from SWARMLIFE_THREADS, else the hardware concurrency.
std::size_t worker_count();

/// Runs fn(0) .. fn(count-1) on up to `workers` threads. The first exception
/// (lowest index) is rethrown after all workers finish. Callers write
/// results by index, so output never depends on scheduling.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& fn,
                  std::size_t workers = worker_count());

}  // namespace swarmlife::harness
