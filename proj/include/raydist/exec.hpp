#pragma once

#include <cstddef>
#include <exception>
#include <limits>
#include <mutex>

namespace raydist {

/// Execution policy for the data-parallel kernels. `serial` is the reference
/// path; `parallel` distributes independent indices over OpenMP threads and
/// must produce bit-identical results.
enum class Exec { serial, parallel };

/// Calls fn(i) for i in [0, n). Under Exec::parallel the first exception by
/// index order is rethrown after the loop, matching what the serial loop would
/// have surfaced.
template <class Fn>
void for_each_index(Exec exec, std::size_t n, Fn&& fn) {
  if (exec == Exec::serial) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::mutex guard;
  std::size_t failed_at = std::numeric_limits<std::size_t>::max();
  std::exception_ptr failure;
  const auto count = static_cast<std::ptrdiff_t>(n);
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t k = 0; k < count; ++k) {
    const auto i = static_cast<std::size_t>(k);
    try {
      fn(i);
    } catch (...) {
      std::lock_guard lock(guard);
      if (i < failed_at) {
        failed_at = i;
        failure = std::current_exception();
      }
    }
  }
  if (failure) std::rethrow_exception(failure);
}

}  // namespace raydist
