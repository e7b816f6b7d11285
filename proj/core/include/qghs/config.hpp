#pragma once

#include "qghs/diagnostics.hpp"
#include "qghs/rng.hpp"

#include <string>
#include <vector>

namespace qghs {

// Plain key = value run description. parse_config applies the documented
// defaults, rejects unknown keys and malformed values with the offending
// line number, and enforces the admissible exponent ranges
// p in (4/3, inf) and q in (6/5, 3).
struct RunConfig {
    std::uint32_t n = 64;
    double l = 6.283185307179586476925286766559;
    std::uint32_t nz = 32;
    double h = 3.1415926535897932384626433832795;

    double t_final = 1.0;
    double dt = 0.0; // 0: pick from the CFL bound
    double cfl = 0.4;
    double dt_cap = 0.1;
    double eps_diss = 0.0;
    bool dealias = true;

    std::uint64_t seed = 1;
    ThetaInit theta_init;
    OmegaInit omega_init;
    ForcingSpec forcing;
    double prepare_eps = 0.0; // 0: skip data preparation

    std::uint64_t snapshot_every = 0; // steps; 0 disables snapshots
    std::uint64_t diag_every = 0;     // steps; 0 disables the diagnostics series

    std::vector<double> p_exponents = {2.0, 3.0, 4.0};
    std::vector<double> q_exponents = {2.0};
    std::vector<double> besov_alphas = {0.5};
    double flux_width = 0.0;

    unsigned threads = 1;
    bool fixed_order = false;
};

RunConfig parse_config(const std::string& text);
RunConfig load_config(const std::string& path);

// Derived objects. initial_state applies the optional data preparation and
// collapses an identically zero omega to the empty representation.
SimState initial_state(const RunConfig& cfg);
StepParams step_params(const RunConfig& cfg);
DiagOptions diag_options(const RunConfig& cfg);

} // namespace qghs
