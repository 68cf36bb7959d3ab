#pragma once

#include <cstddef>
#include <functional>

namespace asymspec {

/// Worker count: ASYMSPEC_THREADS when set to a positive integer, otherwise
/// the hardware concurrency (at least 1).
std::size_t worker_count();

/// Overrides the worker count for this process; 0 restores the default.
void set_worker_count(std::size_t n);

/// Runs body(i) for i in [0, n) across the worker pool. Each index writes its
/// own output slot, so results do not depend on scheduling. If any body
/// throws, the exception from the lowest failing index is rethrown after all
/// workers finish.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace asymspec
