#pragma once

#include <cstddef>
#include <functional>

namespace fig8 {

// 0 means "use the hardware concurrency".
unsigned resolve_threads(unsigned requested);

// Runs body(i) for i in [0, n) on up to `threads` workers.  Each index is
// handled exactly once; callers write results into slot i, so the output
// does not depend on scheduling.  The first exception is rethrown.
void parallel_for(std::size_t n, unsigned threads, const std::function<void(std::size_t)>& body);

} // namespace fig8
