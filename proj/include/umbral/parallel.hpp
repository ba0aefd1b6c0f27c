#pragma once

#include <cstddef>
#include <functional>

namespace umbral {

// Worker count from UMBRAL_THREADS (default: hardware concurrency, at least 1).
std::size_t worker_count();

// Runs body(i) for i in [0, n).  Each index is handled exactly once; callers
// write results into pre-sized slots so output order never depends on the
// schedule.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace umbral
