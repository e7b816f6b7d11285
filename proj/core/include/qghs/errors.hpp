#pragma once

#include <stdexcept>
#include <string>

namespace qghs {

// Precondition failures throw invalid_argument; runtime faults (I/O, solver
// breakdown, blow-up) throw runtime_error. Callers that want soft failure
// catch these at the boundary (CLI, run loop).
inline void require(bool ok, const std::string& msg) {
    if (!ok) throw std::invalid_argument(msg);
}

inline void check_runtime(bool ok, const std::string& msg) {
    if (!ok) throw std::runtime_error(msg);
}

} // namespace qghs
