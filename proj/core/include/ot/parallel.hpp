#pragma once

#include <cstddef>
#include <functional>

namespace ot {

/// Number of worker threads used by data-parallel loops (default 1).
void set_num_threads(int n);
int num_threads();

/// Runs body(i) for i in [0, n). Each index is processed exactly once; callers
/// must only write to per-index storage so the result does not depend on the
/// schedule.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace ot
