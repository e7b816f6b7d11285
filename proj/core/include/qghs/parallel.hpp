#pragma once

#include <cstddef>
#include <functional>

namespace qghs {

// Worker count used by parallel_for. 1 means fully sequential execution in
// the calling thread. Thread-safe to read; set once at startup.
void set_thread_count(unsigned n);
unsigned thread_count();

// Runs fn(i) for i in [0, count). Work items must write to disjoint state;
// reductions are not supported here on purpose, so that results never depend
// on the worker count.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& fn);

} // namespace qghs
