#pragma once

#include <cstddef>
#include <functional>

namespace fieldforge {

/// Number of worker threads: hardware concurrency, capped by FIELDFORGE_THREADS when it holds a
/// positive integer. Always at least 1.
std::size_t worker_count();

/// Calls fn(begin, end) over contiguous chunks covering [0, n). Chunks run on up to worker_count()
/// threads; the first exception thrown by any chunk is rethrown after all threads join.
void parallel_for(std::size_t n, const std::function<void(std::size_t, std::size_t)>& fn);

}  // namespace fieldforge
