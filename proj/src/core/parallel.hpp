#pragma once

#include <cstddef>
#include <functional>

namespace wqed {

// Number of worker threads: WQED_THREADS if set to a positive integer,
// otherwise the hardware concurrency (at least 1).
unsigned thread_count();

// Calls body(i) for i in [0, n). Each index is handled exactly once, so
// results written to slot i are deterministic regardless of scheduling.
// The first exception thrown by any body is rethrown after all workers join.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace wqed
