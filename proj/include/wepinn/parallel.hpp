#pragma once

#include <cstddef>
#include <functional>

namespace wepinn {

/// Worker count from WEPINN_THREADS, else hardware concurrency (at least 1).
int thread_count();

/// Calls task(i) for i in [0, n). Work is split across thread_count() workers;
/// callers write results into per-index slots so that reductions can be done
/// afterwards in index order, independent of the worker count.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& task);

}  // namespace wepinn
