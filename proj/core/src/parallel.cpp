#include "wittenlab/parallel.hpp"

#include "wittenlab/errors.hpp"

#include <omp.h>

namespace wittenlab {

void set_thread_count(int threads) {
    if (threads < 1) {
        throw InvalidArgument("thread count must be >= 1");
    }
    omp_set_num_threads(threads);
}

int thread_count() {
    return omp_get_max_threads();
}

}  // namespace wittenlab
