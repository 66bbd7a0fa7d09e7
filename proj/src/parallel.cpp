#include "salc/parallel.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace salc::par {

void for_indexed(long n, int threads, const std::function<void(long)>& fn) {
  if (threads == 1) {
    for (long i = 0; i < n; ++i) fn(i);
    return;
  }
#ifdef _OPENMP
  if (threads > 1) {
#pragma omp parallel for schedule(dynamic) num_threads(threads)
    for (long i = 0; i < n; ++i) fn(i);
  } else {
#pragma omp parallel for schedule(dynamic)
    for (long i = 0; i < n; ++i) fn(i);
  }
#else
  for (long i = 0; i < n; ++i) fn(i);
#endif
}

int max_threads() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

}  // namespace salc::par
