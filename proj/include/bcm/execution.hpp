#pragma once

// Batch kernels in this library come in two flavours: a plain loop that is
// the reference, and an OpenMP loop over the same independent tasks. Each
// task writes only its own output slot, so both produce identical bits.

#include <cstddef>
#include <exception>
#include <vector>

namespace bcm {

enum class Execution { serial, parallel };

/// Runs fn(i) for i in [0, count). If any task throws, the exception of the
/// lowest failing index is rethrown, so both modes report the same error.
template <class Fn>
void for_each_index(Execution exec, std::size_t count, Fn&& fn) {
  const auto n = static_cast<long long>(count);
  if (exec == Execution::serial) {
    for (long long i = 0; i < n; ++i) fn(static_cast<std::size_t>(i));
    return;
  }
  std::vector<std::exception_ptr> errors(count);
#pragma omp parallel for schedule(dynamic)
  for (long long i = 0; i < n; ++i) {
    try {
      fn(static_cast<std::size_t>(i));
    } catch (...) {
      errors[static_cast<std::size_t>(i)] = std::current_exception();
    }
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

}  // namespace bcm
