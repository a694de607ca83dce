#pragma once

#include <cstddef>
#include <functional>

namespace fracpainleve {

/// Worker count honoring FRACPAINLEVE_THREADS (unset or 0 = hardware concurrency).
unsigned thread_count();

/// Runs body(begin, end) over contiguous chunks of [0, n). Each index is visited
/// by exactly one call, so per-index results do not depend on the thread count.
void parallel_for(std::size_t n, const std::function<void(std::size_t, std::size_t)>& body);

}  // namespace fracpainleve
