#pragma once

#include "qghs/field.hpp"

namespace qghs {

// FFT bridge between collocation values and Fourier coefficients in the
// normalization documented on SpectralField2D. forward_transform of real
// data produces Hermitian-symmetric coefficients up to roundoff;
// inverse_transform validates that symmetry and rejects fields whose
// imaginary content exceeds tol relative to the coefficient magnitude.
SpectralField2D forward_transform(const PhysField2D& f);
PhysField2D inverse_transform(const SpectralField2D& f, double hermitian_tol = 1e-12);

// Largest |coeff(-m) - conj(coeff(m))| over the grid, as an absolute value.
double hermitian_defect(const SpectralField2D& f);

// l^2 * sum |fhat|^2 (spectral Parseval sum; equals the grid quadrature of
// |f|^2 for band-limited data).
double spectral_l2sq(const SpectralField2D& f);

// Grid quadrature sum f^2 dx^2.
double grid_l2sq(const PhysField2D& f);

} // namespace qghs
