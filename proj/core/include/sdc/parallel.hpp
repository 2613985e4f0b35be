#pragma once

#include <cstddef>
#include <functional>

namespace sdc {

/// Worker count used when a caller passes 0. Reads SDC_THREADS, falling back
/// to std::thread::hardware_concurrency().
std::size_t default_thread_count();

/// Runs body(begin, end) over contiguous chunks of [0, n). Chunks are disjoint,
/// so any body that writes only its own slots is result-invariant in `threads`.
void parallel_for(std::size_t n, std::size_t threads,
                  const std::function<void(std::size_t, std::size_t)>& body);

}  // namespace sdc
