#pragma once

#include <cstddef>
#include <functional>

namespace erhoq {

// Worker count: ERHOQ_THREADS if set (minimum 1), otherwise the hardware
// concurrency.  Read once.
int worker_count();

// Runs fn(i) for i in [0, n).  Work is split into contiguous chunks, one
// thread per chunk; fn must only write to per-index slots.  Falls back to a
// plain loop when a single worker is configured, and results never depend on
// the worker count.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

}  // namespace erhoq
