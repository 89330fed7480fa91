#ifndef GROWTHLAB_PARALLEL_HPP
#define GROWTHLAB_PARALLEL_HPP

#include <cstddef>
#include <functional>

namespace growthlab {

/// Worker cap: GROWTHLAB_THREADS when set (positive integer), otherwise the
/// hardware concurrency.
unsigned worker_count();

/// Runs fn(i) for i in [0, n) across workers. Each index writes only its own
/// preallocated slot, so results are identical for every worker count.
void parallel_for_index(std::size_t n, const std::function<void(std::size_t)>& fn);

}  // namespace growthlab

#endif
