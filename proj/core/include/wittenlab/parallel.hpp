#pragma once

namespace wittenlab {

/// Caps the worker count used by parallel loops in the library (>= 1).
void set_thread_count(int threads);

/// Current worker cap.
int thread_count();

}  // namespace wittenlab
