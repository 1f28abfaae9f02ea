#pragma once

#include <cstddef>
#include <functional>

namespace knotmoney {

/// Worker threads used by library loops. KNOTMONEY_WORKERS overrides the
/// hardware concurrency; the result is always at least 1.
unsigned worker_count();

/// Calls fn(begin, end) on contiguous chunks of [0, n). Chunk boundaries
/// depend only on n and the worker count, and callers write results by index,
/// so output never depends on scheduling.
void parallel_for(std::size_t n, const std::function<void(std::size_t, std::size_t)>& fn);

}  // namespace knotmoney
