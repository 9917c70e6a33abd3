#pragma once

#include <cstddef>
#include <functional>

namespace cavnet {

/// Worker count from CAVNET_WORKERS, else the hardware concurrency (>= 1).
std::size_t worker_count();

/// Runs body(i) for i in [0, n) on up to `workers` threads. Each index is
/// processed exactly once; callers write results into slot i, so output does
/// not depend on scheduling. After a failure no new indices are started, and
/// the exception from the lowest failing index seen is rethrown.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body,
                  std::size_t workers = worker_count());

}  // namespace cavnet
