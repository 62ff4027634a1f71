#pragma once

#include <cstddef>
#include <functional>

namespace nilcurve {

// NILCURVE_THREADS when set to a positive integer, else the hardware count.
std::size_t thread_count();

// Runs fn(i) for i in [0, n) on a shared work queue. Callers write results by
// index, so the outcome does not depend on scheduling. The first exception is rethrown.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

}  // namespace nilcurve
