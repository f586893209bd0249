#pragma once

#include <cstddef>
#include <functional>

namespace semilag {

/// Name of the environment variable capping the worker count.
inline constexpr const char* kWorkersEnv = "SEMILAG_WORKERS";

/// Worker count from SEMILAG_WORKERS, else hardware concurrency (at least 1).
unsigned worker_count();

/// Runs body(i) for i in [0, n) over contiguous chunks, one per worker.
/// If any call throws, the exception from the lowest failing index is
/// rethrown after all workers finish, so failures are reported the same way
/// regardless of the worker count.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

} // namespace semilag
