#pragma once

#ifdef _OPENMP
#include <omp.h>
#endif

namespace scsim {

inline int worker_count() {
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

// Runs f(0..n-1); OpenMP-parallel when requested and available, otherwise the
// plain serial loop. Bodies must only write to disjoint slots.
template <typename F>
void parallel_for(int n, bool parallel, F&& f) {
#ifdef _OPENMP
    if (parallel) {
#pragma omp parallel for schedule(dynamic)
        for (int i = 0; i < n; ++i) f(i);
        return;
    }
#else
    (void)parallel;
#endif
    for (int i = 0; i < n; ++i) f(i);
}

} // namespace scsim
