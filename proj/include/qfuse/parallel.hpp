#pragma once

#include <cstdint>
#include <functional>

namespace qfuse {

/// Number of worker threads used by grid search and benchmark fan-out.
/// Capped by the QFUSE_THREADS environment variable when set.
int worker_count();

/// Runs fn(i) for i in [begin, end). Work is split into contiguous chunks;
/// results must be written to per-index slots so the outcome is independent
/// of the execution order.
void parallel_for(std::int64_t begin, std::int64_t end,
                  const std::function<void(std::int64_t)>& fn);

}  // namespace qfuse
