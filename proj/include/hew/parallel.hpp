#pragma once

#include <cstddef>
#include <functional>

namespace hew {

/// Worker count used when a caller passes 0: HEW_THREADS if set, otherwise
/// std::thread::hardware_concurrency().
std::size_t default_threads();

/// Runs body(i) for i in [0, count) on up to `threads` workers (0 = default).
/// Work is claimed dynamically; callers write results into slot i so output
/// never depends on scheduling. The first exception thrown by a body is
/// rethrown after all workers stop.
void parallel_for(std::size_t count, std::size_t threads, const std::function<void(std::size_t)>& body);

}  // namespace hew
