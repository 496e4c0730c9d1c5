#pragma once

// OQW_THREADS: caps the OpenMP team size for every parallel region in the
// process. Unset or 0 means "library default" (usually the core count).
// Builds without OpenMP run serial regardless.

namespace oqw {

// Reads OQW_THREADS and applies it (omp_set_num_threads). Returns the cap
// that was applied, or 0 when left at the default. Call once at startup.
int apply_thread_env();

// Threads a parallel region would use right now (1 without OpenMP).
int effective_threads();

}  // namespace oqw
