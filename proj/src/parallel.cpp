#include "fracburgers/parallel.hpp"

#include <cstdlib>
#include <exception>
#include <string>
#include <thread>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace fracburgers {

int worker_count() {
  int fallback = static_cast<int>(std::thread::hardware_concurrency());
  if (fallback < 1) fallback = 1;
  const char* env = std::getenv("FRACBURGERS_THREADS");
  if (env == nullptr || *env == '\0') return fallback;
  try {
    std::size_t used = 0;
    const int n = std::stoi(env, &used);
    if (used != std::string(env).size() || n < 1) return fallback;
    return n;
  } catch (...) {
    return fallback;
  }
}

void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body) {
#ifdef _OPENMP
  const int workers = worker_count();
  if (workers > 1 && n > 1) {
    const auto count = static_cast<long long>(n);
    // Exceptions may not cross the parallel region; the one from the lowest
    // index is rethrown so the error is deterministic too.
    std::exception_ptr error;
    long long error_at = count;
#pragma omp parallel for num_threads(workers) schedule(static)
    for (long long i = 0; i < count; ++i) {
      try {
        body(static_cast<std::size_t>(i));
      } catch (...) {
#pragma omp critical(fracburgers_parallel_error)
        if (i < error_at) {
          error_at = i;
          error = std::current_exception();
        }
      }
    }
    if (error) std::rethrow_exception(error);
    return;
  }
#endif
  for (std::size_t i = 0; i < n; ++i) body(i);
}

}  // namespace fracburgers
