#include "kadec/parallel.hpp"

#include <cstdlib>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace kadec::par {

namespace {

int resolve_budget() {
#ifdef _OPENMP
    int avail = omp_get_max_threads();
#else
    int avail = 1;
#endif
    if (avail < 1) avail = 1;
    const char* env = std::getenv("ORBIT_KADEC_THREADS");
    if (env == nullptr || *env == '\0') return avail;
    char* end = nullptr;
    long requested = std::strtol(env, &end, 10);
    if (end == env || requested <= 0) return avail; // 0 or garbage = auto
    return requested < avail ? static_cast<int>(requested) : avail;
}

} // namespace

int thread_budget() {
    static const int budget = resolve_budget();
    return budget;
}

} // namespace kadec::par
