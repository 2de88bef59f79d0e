#pragma once

#include <cstddef>
#include <functional>

namespace ringchain {

// Worker count: RINGCHAIN_THREADS if set, otherwise the hardware concurrency.
int thread_count();

// Runs fn(0) ... fn(n-1), distributing indices over the worker pool. Each
// index must write only to its own output slot; callers reduce afterwards in
// index order so results do not depend on the thread count.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

}  // namespace ringchain
