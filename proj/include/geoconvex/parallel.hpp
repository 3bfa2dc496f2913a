#pragma once

#include <cstddef>
#include <functional>

namespace geoconvex {

// Resolves a user-facing thread count: 0 means "use hardware concurrency",
// anything else is taken literally (minimum 1).
int resolve_thread_count(int requested);

// Runs body(i) for i in [0, count) across the given number of threads.
// Indices are partitioned into contiguous blocks, so writes to per-index
// slots are race free and results do not depend on the thread count.
// The first exception thrown by any body is rethrown on the caller.
void parallel_for(std::size_t count, int threads, const std::function<void(std::size_t)>& body);

}  // namespace geoconvex
