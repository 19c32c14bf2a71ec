#pragma once

#include <cstddef>

namespace pap {

/// Global switch for the OpenMP kernels; handy for A/B testing against the
/// serial references and respected by every parallel loop in the library.
void set_parallel_enabled(bool on);
bool parallel_enabled();

/// Runs fn(i) for i in [0, n). Uses an OpenMP parallel-for when enabled and
/// worthwhile; the callable must be safe on disjoint indices (all library
/// values are immutable, so this holds for pure per-index work).
template <class Fn>
void parallel_for(size_t n, Fn&& fn);

namespace detail {
bool use_openmp(size_t n);
}

}  // namespace pap

#ifdef _OPENMP
#include <omp.h>
#endif

namespace pap {

template <class Fn>
void parallel_for(size_t n, Fn&& fn) {
#ifdef _OPENMP
  if (detail::use_openmp(n)) {
#pragma omp parallel for schedule(dynamic)
    for (long i = 0; i < static_cast<long>(n); ++i) {
      fn(static_cast<size_t>(i));
    }
    return;
  }
#endif
  for (size_t i = 0; i < n; ++i) fn(i);
}

}  // namespace pap
