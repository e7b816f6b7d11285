#pragma once

#include <functional>

#include "qghs/transform.hpp"

namespace qghs {

// Pointwise Fourier multiplier m(k1,k2). The symbol is evaluated at the
// signed physical wavevector of every grid mode; a non-finite value at any
// k != 0 is a rejection. Symbols of homogeneous operators must either be
// finite at k = 0 or the caller uses the *_homogeneous variant, which
// forces the mean mode to zero without sampling the symbol there.
using Multiplier = std::function<cplx(double, double)>;

SpectralField2D apply_multiplier(const SpectralField2D& f, const Multiplier& m);
SpectralField2D apply_multiplier_homogeneous(const SpectralField2D& f, const Multiplier& m);

// 2/3-rule truncation: zero every coefficient with max(|m1|,|m2|) > n/3.
SpectralField2D dealias(const SpectralField2D& f);
void dealias_inplace(SpectralField2D& f);
bool is_dealiased(const SpectralField2D& f);

// Horizontal spectral derivative d/dx_j, j in {1,2}. Odd symbol: the
// Nyquist lines have no real-valued representation and are annihilated.
SpectralField2D deriv(const SpectralField2D& f, int j);

// Collocation product of two spectral fields followed by the 2/3
// truncation. Inputs already confined to the 2/3 band make the result the
// exact spectral convolution restricted to that band.
SpectralField2D product_dealiased(const SpectralField2D& a, const SpectralField2D& b);

// Translate by whole grid cells: g(x) = f(x - (s1,s2)*dx).
PhysField2D shift(const PhysField2D& f, int s1, int s2);

// Torus L^p norm by grid quadrature; p = infinity via max.
double lp_norm(const PhysField2D& f, double p);
double linf_norm(const PhysField2D& f);

// Zero-mean Gaussian band fields for seeded families: independent complex
// Gaussians on all modes with kmin <= |m| <= kmax (Euclidean magnitude),
// Hermitian-symmetrized, scaled so linf is about `amp`. Deterministic in
// (grid, seed, band).
SpectralField2D random_band_field(const TorusGrid& g, std::uint64_t seed,
                                  double kmin, double kmax, double amp);

} // namespace qghs
