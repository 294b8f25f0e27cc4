#pragma once

#include <cstddef>
#include <functional>

namespace polydet {

// Worker cap: POLYDET_THREADS if set to a positive integer, otherwise the
// hardware concurrency.
int thread_cap();

// Runs fn(i) for i in [0, n). Each index is handled exactly once; callers
// write results into per-index slots so the outcome does not depend on
// scheduling. The first exception thrown is rethrown after all workers join.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

} // namespace polydet
