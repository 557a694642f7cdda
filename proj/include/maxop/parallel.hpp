#pragma once

#include <cstddef>
#include <functional>

namespace maxop {

// Worker count: hardware concurrency, capped by MAXOP_THREADS when set.
unsigned thread_count();

// Calls body(begin, end) on disjoint contiguous chunks of [0, n). Each index
// is owned by exactly one chunk, so writes to per-index slots are race free
// and results do not depend on the thread count.
void parallel_for(std::size_t n, const std::function<void(std::size_t, std::size_t)>& body);

} // namespace maxop
