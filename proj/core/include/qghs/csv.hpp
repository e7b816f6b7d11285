#pragma once

#include "qghs/diagnostics.hpp"

#include <string>
#include <vector>

namespace qghs {

// Diagnostics series as CSV: a header row naming every field, then one row
// per record with values printed to 17 significant digits, so re-reading
// reproduces every double bit-exactly. All records must share the same
// exponent sets (columns are taken from the first record).
std::string diagnostics_csv(const std::vector<DiagnosticsRecord>& records);
void write_diagnostics_csv(const std::string& path, const std::vector<DiagnosticsRecord>& records);
std::vector<DiagnosticsRecord> parse_diagnostics_csv(const std::string& text);
std::vector<DiagnosticsRecord> load_diagnostics_csv(const std::string& path);

// Dyadic spectrum of a boundary field: one row per Littlewood-Paley band
// with the band energy and the alpha-weighted L^3 block norm.
std::string spectrum_csv(const SpectralField2D& u, double alpha);

} // namespace qghs
