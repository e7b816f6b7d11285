#pragma once

#include "qghs/field.hpp"

#include <cstdint>
#include <string>

namespace qghs {

// Named, seeded initial-data generators. Everything here is deterministic in
// (kind, seed, grid): repeated calls produce bit-identical fields.

struct ThetaInit {
    std::string kind = "zero"; // zero | single_mode | random_band
    double amp = 1.0;
    int m1 = 1, m2 = 0;        // single_mode: amp * cos(k(m1,m2) . x)
    int kmin = 1, kmax = 4;    // random_band: annulus kmin <= |m| <= kmax
    std::uint64_t seed = 1;
};

struct OmegaInit {
    std::string kind = "zero"; // zero | band_profile
    double amp = 1.0;
    int kmin = 1, kmax = 4;
    double z0 = 0.5;           // Gaussian bump centre in z
    double zw = 0.25;          // and its width
    std::uint64_t seed = 2;
};

SpectralField2D make_theta(const ThetaInit& spec, const TorusGrid& grid);
LayeredSpectral3D make_omega(const OmegaInit& spec, const SlabGrid& slab);

// amp * cos(k(m1,m2) . x) as a two-coefficient spectral field.
SpectralField2D cosine_mode(const TorusGrid& grid, int m1, int m2, double amp);

} // namespace qghs
