#pragma once

namespace kadec::par {

// Number of threads the parallel kernels may use. Controlled by the
// ORBIT_KADEC_THREADS environment variable (0 or unset = all available
// cores); always at least 1. Read once on first use.
int thread_budget();

// Chunk width of the deterministic chunked reductions. Partial sums are
// formed per fixed-size chunk and combined in chunk order, so reduction
// results do not depend on the thread count.
inline constexpr long reduction_chunk = 8192;

} // namespace kadec::par
