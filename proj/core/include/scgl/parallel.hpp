#pragma once

#include <cstddef>
#include <functional>

namespace scgl {

// Runs fn(0..n-1) across up to `threads` workers (0 = hardware concurrency).
// Work items are claimed from an atomic counter; fn must only write state
// owned by its index. Exceptions are captured and the first one rethrown.
void parallel_for(std::size_t n, int threads, const std::function<void(std::size_t)>& fn);

int default_thread_count();

}  // namespace scgl
