#pragma once

#include <array>

#include "qghs/spectral_ops.hpp"

namespace qghs {

// Horizontal Riesz transform R_j, symbol -i*k_j/|k|. Homogeneous: the mean
// mode is annihilated. Nyquist lines are annihilated too (an odd symbol has
// no real-valued representation on the self-conjugate modes); band-limited
// inputs are unaffected.
SpectralField2D riesz(const SpectralField2D& f, int j);

// Perpendicular Riesz vector R_perp f = (0, -R_2 f, R_1 f). Returns the two
// horizontal components; the z component is identically zero. The spectral
// horizontal divergence of the result vanishes mode by mode.
std::array<SpectralField2D, 2> riesz_perp(const SpectralField2D& f);

// Fractional horizontal Laplacian (-lap)^{s/2}: symbol |k|^s. For s < 0 the
// input must be zero-mean (rejection otherwise); the mean mode of the
// output is always zero.
SpectralField2D lambda_pow(const SpectralField2D& f, double s);

// Harmonic extension to height z >= 0: multiplier e^{-z|k|} (mean mode
// zeroed; extension preconditions zero-mean data).
SpectralField2D poisson_extend(const SpectralField2D& f, double z);

// Dirichlet-to-Neumann map of the decaying harmonic extension: |k|, equal
// to lambda_pow(f, 1).
SpectralField2D dirichlet_to_neumann(const SpectralField2D& f);

} // namespace qghs
