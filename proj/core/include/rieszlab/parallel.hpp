#pragma once

#include <cstddef>
#include <functional>

namespace rieszlab {

/// Process-wide worker budget for sweep evaluation (1 = sequential).
void set_thread_count(int n);
int thread_count();

/// Runs fn(i) for i in [0, n), partitioned across the worker budget.
/// Each index writes its own result slot, so results do not depend on the
/// thread count; exceptions are rethrown on the caller thread.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

}  // namespace rieszlab
