#pragma once

#include <cstddef>
#include <functional>

namespace tropifs {

/// Worker count used by row-parallel kernels. 0 or 1 means sequential.
void set_thread_count(unsigned n);
unsigned thread_count();

/// Calls body(i) for i in [begin, end), splitting the range into contiguous
/// chunks across worker threads. Each index is visited exactly once, so the
/// result is independent of the thread count as long as body(i) only writes
/// state owned by i.
void parallel_for(std::size_t begin, std::size_t end,
                  const std::function<void(std::size_t)>& body,
                  std::size_t min_chunk = 16);

}  // namespace tropifs
