#pragma once

#include <cstddef>
#include <functional>

namespace hypk {

// Worker count for a request; 0 means the machine's hardware concurrency.
int resolve_workers(int requested);

// Runs fn(i) for every i in [0, n), each index exactly once, on up to `workers` threads.
// Callers write results to slot i, so the outcome is independent of the worker count.
// The exception of the smallest failing index is rethrown after all threads join.
void parallel_for(std::size_t n, int workers, const std::function<void(std::size_t)>& fn);

}  // namespace hypk
