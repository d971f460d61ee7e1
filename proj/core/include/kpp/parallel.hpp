#pragma once

#include <cstddef>
#include <functional>

namespace kpp {

/// Worker count: KPP_FRONT_LAB_THREADS if set to a positive integer, else
/// std::thread::hardware_concurrency() (at least 1).
std::size_t worker_count();

/// Runs body(i) for i in [0, n) on up to `workers` threads. Indices are
/// claimed one at a time; callers write results into per-index slots, so the
/// output never depends on scheduling. The first exception thrown by any
/// worker is rethrown after all workers join.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body,
                  std::size_t workers = worker_count());

}  // namespace kpp
