#pragma once
// Execution policy for the sweep kernels.  Exec::par runs iterations under
// OpenMP; Exec::serial is the reference path.  Kernels only ever write
// per-index slots and fold serially afterwards, so both policies produce
// bit-identical results — tests in test_parallel.cpp hold them to that.

#include <cstddef>

namespace mubwig {

enum class Exec { serial, par };

template <typename F>
void for_each_index(std::size_t count, Exec policy, F&& body) {
#ifdef _OPENMP
  if (policy == Exec::par) {
#pragma omp parallel for schedule(static)
    for (long long i = 0; i < static_cast<long long>(count); ++i)
      body(static_cast<std::size_t>(i));
    return;
  }
#else
  (void)policy;
#endif
  for (std::size_t i = 0; i < count; ++i) body(i);
}

}  // namespace mubwig
