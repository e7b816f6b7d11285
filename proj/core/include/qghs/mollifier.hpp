#pragma once

#include "qghs/field.hpp"

namespace qghs {

// Compactly supported bump gamma_eps(y) ~ exp(-1/(1-(|y|/eps)^2)) on
// |y| < eps, sampled at grid offsets and renormalized so the discrete
// weights are nonnegative and sum to exactly 1. Convolution with these
// weights is a convex average: it preserves the mean exactly and is
// non-expansive in every L^p, which the mollification identities rely on.
struct Mollifier {
    double eps = 0.0;
    int r = 0;                  // support radius in cells
    std::vector<double> w;      // (2r+1)^2 weights, offset (a,b) at (a+r)*(2r+1)+(b+r)
    TorusGrid grid;

    Mollifier() = default;
    Mollifier(const TorusGrid& g, double eps_);

    double weight(int a, int b) const { return w[std::size_t(a + r) * (2 * r + 1) + (b + r)]; }

    // Discrete symbol sum_y w(y) cos(k.y); the eigenvalue of the
    // convolution on the e^{ik.x} mode. Always in [-1, 1].
    double transform_value(double k1, double k2) const;

    // transform_value at every grid wavevector, laid out like the
    // coefficient array of a SpectralField2D on the same grid. The even
    // kernel makes the double sum separable, so this costs O(n^2 r)
    // instead of the O(n^2 r^2) of per-mode evaluation.
    std::vector<double> transform_table() const;
};

PhysField2D mollify(const PhysField2D& f, const Mollifier& m);
SpectralField2D mollify(const SpectralField2D& f, const Mollifier& m);

// 1-D counterpart used for vertical smoothing: weights at integer offsets
// of dz, renormalized to sum 1.
struct Mollifier1D {
    double eps = 0.0;
    int r = 0;
    std::vector<double> w; // offsets [-r..r]

    Mollifier1D() = default;
    Mollifier1D(double dz, double eps_);
    double weight(int a) const { return w[std::size_t(a + r)]; }
};

// Smooth a vertical profile (values at nz levels) by even reflection at
// both ends followed by circular convolution. Mirror extension makes the
// trapezoid-weighted slab a uniformly weighted circle, so the operation is
// doubly stochastic and non-expansive in every trapezoid L^q.
std::vector<double> mollify_profile_mirror(const std::vector<double>& prof, const Mollifier1D& m);

} // namespace qghs
