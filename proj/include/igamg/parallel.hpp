#pragma once

#include <functional>

namespace igamg {

/// Worker count for parallel loops: hardware concurrency, capped by the
/// IGA_MG_THREADS environment variable when it is set to a positive integer.
int worker_threads();

/// Runs body(i) for i in [0, count) on up to `threads` workers with a static
/// contiguous partition.  Bodies must write to disjoint memory.
void parallel_for(int count, int threads, const std::function<void(int)>& body);

} // namespace igamg
