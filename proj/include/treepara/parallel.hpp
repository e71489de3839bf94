#pragma once

#include <cstddef>
#include <functional>

namespace treepara {

/// Worker count used by library loops; 0 selects the hardware count.
void set_thread_count(std::size_t n);
std::size_t thread_count();

/// Splits [0, count) into contiguous chunks, one per worker, and runs
/// body(begin, end) on each. Callers write to disjoint slots and reduce
/// afterwards in index order, so results do not depend on the worker count.
void parallel_for(std::size_t count, const std::function<void(std::size_t, std::size_t)>& body);

}  // namespace treepara
