#pragma once

namespace hullkit {

// Worker cap: HULLKIT_THREADS if set, otherwise the OpenMP default.
int max_workers();

// Apply HULLKIT_THREADS (if present) to the OpenMP runtime. Called once by
// entry points; harmless to call repeatedly.
void apply_thread_env();

}  // namespace hullkit
