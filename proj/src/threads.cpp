#include "oqw/threads.hpp"

#include <cstdlib>
#include <stdexcept>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace oqw {

int apply_thread_env() {
    const char* env = std::getenv("OQW_THREADS");
    if (env == nullptr || *env == '\0') return 0;
    int want = 0;
    try {
        want = std::stoi(env);
    } catch (const std::exception&) {
        throw std::invalid_argument(std::string("OQW_THREADS must be an integer, got '") + env +
                                    "'");
    }
    if (want < 0) throw std::invalid_argument("OQW_THREADS must be >= 0");
    if (want == 0) return 0;  // 0 = leave the library default
#ifdef _OPENMP
    omp_set_num_threads(want);
#endif
    return want;
}

int effective_threads() {
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

}  // namespace oqw
