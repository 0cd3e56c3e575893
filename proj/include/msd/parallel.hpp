#pragma once

#include <cstddef>
#include <functional>

namespace msd {

// 0 means hardware concurrency.
void set_thread_count(int threads);
int thread_count();

// Runs body(k) for k in [0, count) on up to thread_count() workers.
// Each index runs exactly once; callers write results into slot k, so output is independent of
// scheduling. The first exception thrown by any body is rethrown after all workers join.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

}  // namespace msd
