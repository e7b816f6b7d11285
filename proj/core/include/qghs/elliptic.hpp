#pragma once

#include "qghs/harmonic.hpp"

namespace qghs {

// Vertical second-order machinery shared by the elliptic solves. All
// solvers act per horizontal mode on profiles over the slab levels.

// Apply the second-order vertical derivative (centered interior, one-sided
// three-point rows at both ends) to a profile of length nz.
void dz_apply(const std::vector<cplx>& f, std::vector<cplx>& out, double dz);

// Solve (-d2/dz2 + kappa^2) psi = -omega on the levels with a prescribed
// bottom flux d_z psi(0) = gbot and either the radiation closure
// d_z psi(H) = -kappa psi(H) (top_flux == nullptr) or a prescribed top flux
// d_z psi(H) = *top_flux. Lumped P1 form, second order in dz. kappa == 0
// with prescribed top flux must be compatible (sum rule); the returned
// profile is pinned to zero trapezoid mean in that case.
std::vector<cplx> solve_vertical_mode(const std::vector<cplx>& omega, double kappa, double dz,
                                      cplx gbot, const cplx* top_flux);

// Harmonic part of the split: Delta psi1 = 0, d_nu psi1 = theta; exact per
// mode, psi1hat(z,k) = thetahat(k) e^{-|k|z}/|k|. Mean mode is zero.
LayeredSpectral3D solve_psi1(const SpectralField2D& theta, const SlabGrid& slab);

// Source part of the split: Delta psi2 = omega, d_nu psi2 = 0, radiation
// condition at the top; k = 0 solved as the pure Neumann problem with the
// compatibility flux d_z psi(H) = int_0^H omega0 and zero-mean pinning.
LayeredSpectral3D solve_psi2(const LayeredSpectral3D& omega);

struct EllipticSplit {
    LayeredSpectral3D psi1;
    LayeredSpectral3D psi2;

    LayeredSpectral3D total() const;         // psi1 + psi2
    LayeredSpectral3D flow_potential() const; // psi2 - psi1; its perp gradient advects
};

EllipticSplit elliptic_split(const SpectralField2D& theta, const LayeredSpectral3D& omega);

// Full gradient (d_z, d_x1, d_x2): spectral horizontally, second-order
// finite differences vertically.
LayeredVec3<SpectralField2D> gradient(const LayeredSpectral3D& psi);

// Restriction to the boundary level z = 0.
SpectralField2D boundary_trace(const LayeredSpectral3D& f);

// L^2-orthogonal projection onto gradients over the slab: returns grad w
// where w solves the discrete weak problem <grad w, grad phi> = <v, grad phi>
// for every test profile, per horizontal mode. The same discrete gradient
// appears on both sides, so the projection is idempotent and the residual
// v - grad w is orthogonal to every discrete gradient, both to solver
// roundoff. Nyquist lines of the input are annihilated.
LayeredVec3<SpectralField2D> hodge_project(const LayeredVec3<SpectralField2D>& v);

// Exponent bookkeeping for the a priori estimates.
double sobolev_lift(double q);          // 3q/(3-q), q in (6/5, 3)
double trace_exponent(double q);        // 2q/(3-q)
double neumann_lift(double p);          // 3p/2
double commutator_threshold(double q);  // 2q/(3(q-1))

// Slab L^q norm: trapezoid in z, grid quadrature horizontally.
double slab_lq_norm(const LayeredPhys3D& f, double q);
double slab_lq_norm(const LayeredSpectral3D& f, double q);
double slab_linf_norm(const LayeredPhys3D& f);

LayeredPhys3D to_physical(const LayeredSpectral3D& f);
LayeredSpectral3D to_spectral(const LayeredPhys3D& f);

} // namespace qghs
