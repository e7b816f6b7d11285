#pragma once

#include "qghs/spectral_ops.hpp"

namespace qghs {

// Sharp dyadic annulus in frequency: integer wavevectors with
// 2^j <= |m| < 2^{j+1}, |m| the Euclidean magnitude of (m1, m2) (physical
// |k| = 2*pi*|m|/l). The bands for a grid partition every nonzero mode.
struct DyadicBand {
    int j = 0;
    double lo() const { return std::pow(2.0, j); }
    double hi() const { return std::pow(2.0, j + 1); }
    bool contains(int m1, int m2) const {
        const double mag = std::sqrt(double(m1) * m1 + double(m2) * m2);
        return mag >= lo() && mag < hi();
    }
};

// Bands covering every nonzero mode of the grid (j = 0 .. jmax).
std::vector<DyadicBand> dyadic_bands(const TorusGrid& g);

// Sharp-cutoff band projection Delta_j u.
SpectralField2D lp_project(const SpectralField2D& u, const DyadicBand& band);

// sup_j 2^{j alpha} || Delta_j u ||_{L^p} over the resolved bands, grid
// quadrature for the L^p norm (default p = 3).
double besov_norm(const SpectralField2D& u, double alpha, double p = 3.0);

// Per-band L^2 energy l^2 sum |uhat|^2 (the spectrum CSV content).
std::vector<double> band_energies(const SpectralField2D& u);

} // namespace qghs
