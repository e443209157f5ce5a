#pragma once

#include <cstdint>
#include <exception>
#include <limits>

#include <omp.h>

namespace minf {

// 0 selects the OpenMP default (machine parallelism).
inline int resolve_threads(int requested) { return requested > 0 ? requested : omp_get_max_threads(); }

// Runs body(i) for i in [begin, end) across OpenMP workers. If any iteration throws,
// the exception from the lowest index is rethrown after the loop, so failures are
// reported deterministically regardless of scheduling.
template <class Body>
void parallel_for(std::int64_t begin, std::int64_t end, int threads, Body&& body) {
  std::exception_ptr error;
  std::int64_t error_index = std::numeric_limits<std::int64_t>::max();
#pragma omp parallel for schedule(dynamic, 64) num_threads(resolve_threads(threads))
  for (std::int64_t i = begin; i < end; ++i) {
    try {
      body(i);
    } catch (...) {
#pragma omp critical(minf_parallel_for_error)
      if (i < error_index) {
        error_index = i;
        error = std::current_exception();
      }
    }
  }
  if (error) std::rethrow_exception(error);
}

}  // namespace minf
