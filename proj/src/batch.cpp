#include "cloudmarket/batch.hpp"

#include <exception>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace cloudmarket {

void for_each_index(int n, ExecMode mode, const std::function<void(int)>& fn) {
  if (n <= 0) return;
  if (mode == ExecMode::Serial) {
    for (int i = 0; i < n; ++i) fn(i);
    return;
  }
  std::exception_ptr first_error = nullptr;
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
  for (int i = 0; i < n; ++i) {
    try {
      fn(i);
    } catch (...) {
#ifdef _OPENMP
#pragma omp critical
#endif
      {
        if (!first_error) first_error = std::current_exception();
      }
    }
  }
  if (first_error) std::rethrow_exception(first_error);
}

int max_threads() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

}  // namespace cloudmarket
