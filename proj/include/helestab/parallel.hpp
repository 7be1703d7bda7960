// Deterministic index-ordered parallel loop for grid sweeps.
#pragma once

#include <functional>

namespace helestab::parallel {

// Worker count for njobs independent jobs: hardware concurrency, capped by
// the HELESTAB_THREADS environment variable (positive integer) when set, and
// never more than njobs. Always at least 1.
int worker_count(int njobs);

// Runs body(i) for every i in [0, n). Workers pull indices from a shared
// atomic counter; the caller keeps determinism by writing results into
// index-addressed storage. The first exception thrown by any body is
// rethrown in the calling thread after all workers finish.
void parallel_for(int n, const std::function<void(int)>& body);

}  // namespace helestab::parallel
