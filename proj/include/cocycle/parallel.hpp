#pragma once

#include <cstddef>
#include <functional>

namespace cocycle {

// Thread count from COCYCLE_LAB_THREADS, or 1 when unset or invalid.
unsigned default_thread_count();

// Calls body(i) once for every i in [0, count) on a pool of `threads`
// workers. Indices are handed out dynamically, so body must only write to
// state owned by index i; results are then independent of the thread count.
// The first exception thrown by any body is rethrown after all workers stop.
void parallel_for(std::size_t count, unsigned threads, const std::function<void(std::size_t)>& body);

}  // namespace cocycle
