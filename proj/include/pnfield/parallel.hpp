#pragma once

#include <cstddef>
#include <functional>

namespace pnfield {

/// Hardware concurrency, capped by the PNFIELD_THREADS environment variable when set.
unsigned default_worker_count();

/// Runs body(worker, i) for every i in [0, count). Worker ids lie in
/// [0, workers) so callers can keep per-worker scratch. workers == 0 selects
/// default_worker_count(). The first exception thrown by a task is rethrown.
void parallel_for(std::size_t count, unsigned workers, const std::function<void(unsigned, std::size_t)>& body);

/// Number of workers parallel_for will actually start for `count` tasks.
unsigned effective_workers(std::size_t count, unsigned workers);

}  // namespace pnfield
