#pragma once

#include <cstddef>
#include <functional>

namespace snls {

/// Worker threads available to sweeps. Reads SPRINKLED_NLS_THREADS: unset
/// means hardware concurrency, 0 or 1 means sequential execution.
std::size_t worker_count();

/// Runs body(i) for i in [0, n). Iterations must write only to their own
/// slot; callers reduce afterwards in ascending index order so the result is
/// independent of the thread count. The first exception (lowest index) is
/// rethrown after all workers finish.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace snls
