#pragma once

#include <functional>

namespace salc::par {

// Runs fn(i) for i in [0, n). Each task writes only to its own
// index-addressed slot; reductions over the slots happen serially in index
// order afterwards, so results are identical for any worker count.
//
// threads == 1 selects the plain serial loop (the reference path used by the
// equivalence tests and the benchmark); threads == 0 uses the OpenMP default
// team; any other value pins the team size. Without OpenMP every path is
// serial.
void for_indexed(long n, int threads, const std::function<void(long)>& fn);

int max_threads();

}  // namespace salc::par
