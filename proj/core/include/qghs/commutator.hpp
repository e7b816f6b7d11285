#pragma once

#include <array>

#include "qghs/harmonic.hpp"
#include "qghs/mollifier.hpp"

namespace qghs {

// int a b dx over the torus, evaluated spectrally; exact for grid data by
// Parseval with this normalization.
double integrate_product(const SpectralField2D& a, const SpectralField2D& b);

// Calderon commutator [Lambda, grad phi](Lambda^{-1} theta), componentwise
// in the two horizontal directions:
//   C_j = Lambda(d_j phi * Lambda^{-1} theta) - d_j phi * theta.
// theta must be zero-mean (Lambda^{-1}); products are collocation products
// followed by the 2/3 truncation.
std::array<SpectralField2D, 2> calderon_commutator(const SpectralField2D& theta,
                                                   const SpectralField2D& phi);

// Boundary nonlinear flux against a surface test function, in the two
// equivalent forms of the commutator lemma:
//   direct     = int theta (Rperp theta . grad phi) dx
//   commutator = 1/2 int (Rperp theta) . [Lambda, grad phi](Lambda^{-1} theta) dx
// For band-limited inputs direct == -commutator to roundoff.
double nonlinear_flux_direct(const SpectralField2D& theta, const SpectralField2D& phi);
double nonlinear_flux_commutator(const SpectralField2D& theta, const SpectralField2D& phi);

// Both sides of the mollification commutator identity
//   (fg)^eps - f^eps g^eps
//     = int (f(x-y)-f(x)) gamma(y) (g(x-y) - g^eps(x)) dy
// evaluated independently: `direct` by three convolutions, `via_rep` by the
// double quadrature over the mollifier support. Finite-sum algebra makes
// the two equal to roundoff for any grid field.
struct MollifierCommutatorCheck {
    PhysField2D direct;
    PhysField2D via_rep;
    double max_deviation = 0.0;
};
MollifierCommutatorCheck mollifier_commutator_check(const PhysField2D& f, const PhysField2D& g,
                                                    const Mollifier& m);

} // namespace qghs
