// Deterministic static-partition parallel loops.
#pragma once

#include <functional>

namespace ebench {

// Worker count: the requested value if positive, else the hardware count,
// capped by EULER_BENCH_THREADS when that is set.
int resolve_workers(int requested);

// Splits [begin, end) into `workers` contiguous chunks of fixed size.  Each
// index is handled by exactly one call of fn(lo, hi).
void parallel_for(int begin, int end, int workers, const std::function<void(int, int)>& fn);

}  // namespace ebench
