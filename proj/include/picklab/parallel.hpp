#pragma once

#include <cstddef>
#include <utility>

namespace picklab {

/// Execution mode for the data-parallel kernels.  Serial and Parallel run
/// the same per-item code; results are merged by a sequential reduction, so
/// the two modes produce bit-identical output.
enum class Execution { Serial, Parallel };

/// Applies `body(i)` for i in [0, count).  Items must be independent; any
/// per-item state goes into preallocated slots owned by the caller.
template <class F>
void for_each_index(std::size_t count, Execution exec, F&& body) {
  if (exec == Execution::Parallel) {
#pragma omp parallel for schedule(dynamic)
    for (long long i = 0; i < static_cast<long long>(count); ++i) {
      body(static_cast<std::size_t>(i));
    }
  } else {
    for (std::size_t i = 0; i < count; ++i) {
      body(i);
    }
  }
}

}  // namespace picklab
