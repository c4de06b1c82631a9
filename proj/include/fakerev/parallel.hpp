#pragma once

#include <cstddef>
#include <cstdint>
#include <exception>
#include <initializer_list>
#include <random>

namespace fakerev {

/// Resolves a requested worker count. A positive request wins; otherwise the
/// FAKEREV_WORKERS environment variable, then the OpenMP default.
int resolve_workers(int requested);

/// Seeds an independent engine for one unit of work (a tree, a fold, a
/// reviewer). The stream depends only on the root seed and the path of
/// indices, never on the thread that runs the unit.
std::mt19937_64 derive_engine(std::uint64_t root_seed, std::initializer_list<std::uint64_t> path);

/// Runs fn(i) for i in [0, n) on up to `workers` OpenMP threads. If any call
/// throws, the exception from the lowest index is rethrown after the loop.
template <typename Fn>
void parallel_for(std::size_t n, int workers, Fn&& fn) {
  std::exception_ptr error;
  std::size_t error_index = n;
  const auto count = static_cast<std::ptrdiff_t>(n);
#pragma omp parallel for schedule(dynamic) num_threads(resolve_workers(workers))
  for (std::ptrdiff_t i = 0; i < count; ++i) {
    try {
      fn(static_cast<std::size_t>(i));
    } catch (...) {
#pragma omp critical(fakerev_parallel_for_error)
      {
        if (static_cast<std::size_t>(i) < error_index) {
          error_index = static_cast<std::size_t>(i);
          error = std::current_exception();
        }
      }
    }
  }
  if (error) std::rethrow_exception(error);
}

}  // namespace fakerev
