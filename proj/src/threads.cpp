#include "hullkit/threads.hpp"

#include <omp.h>

#include <cstdlib>
#include <string>

namespace hullkit {

static int env_thread_cap() {
  const char* v = std::getenv("HULLKIT_THREADS");
  if (!v) return 0;
  int n = std::atoi(v);
  return n > 0 ? n : 0;
}

int max_workers() {
  int cap = env_thread_cap();
  int omp = omp_get_max_threads();
  if (cap > 0 && cap < omp) return cap;
  return omp;
}

void apply_thread_env() {
  int cap = env_thread_cap();
  if (cap > 0) omp_set_num_threads(cap);
}

}  // namespace hullkit
