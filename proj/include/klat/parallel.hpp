#pragma once

#ifdef _OPENMP
#include <omp.h>
#endif

namespace klat {

// Worker count used by the OpenMP kernels. Results are deterministic for any
// count; this only trades wall time.
inline void set_threads(int n) {
#ifdef _OPENMP
  if (n >= 1) omp_set_num_threads(n);
#else
  (void)n;
#endif
}

inline int max_threads() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

}  // namespace klat
