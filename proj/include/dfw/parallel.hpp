#pragma once

#include <cstddef>
#include <functional>

namespace dfw {

/// Worker count: DFW_THREADS if set and positive, otherwise the hardware concurrency.
unsigned thread_count();

/// Runs body(i) for i in [0, n), split into contiguous chunks across threads.
/// Each index is processed by exactly one thread, so per-index results do not
/// depend on the thread count.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace dfw
