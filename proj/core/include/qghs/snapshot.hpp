#pragma once

#include "qghs/dynamics.hpp"

#include <string>

namespace qghs {

// Binary state snapshot, little-endian throughout:
//   bytes 0..3   magic "QGHS"
//   u32          format version (1)
//   u32 n, u32 nz
//   f64 l, f64 h, f64 t
//   theta coefficients, n*n pairs (re, im) of f64, row-major
//   omega coefficients, nz layers of n*n pairs, layer 0 first
// An empty omega writes explicit zeros, so the file layout never depends on
// the in-memory representation. Round trips are byte-exact.
void write_snapshot(const std::string& path, const SimState& s);
SimState read_snapshot(const std::string& path);

} // namespace qghs
