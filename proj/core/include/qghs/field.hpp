#pragma once

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "qghs/grid.hpp"

namespace qghs {

using cplx = std::complex<double>;

// Fourier-side scalar field. coeff(i,j) is the coefficient of
// exp(i*(k1(i)*x1 + k2(j)*x2)) in f(x) = sum_k fhat(k) e^{ik.x}, so a real
// field satisfies coeff(-m) = conj(coeff(m)). Parseval with this
// normalization: int |f|^2 dx = l^2 * sum |fhat|^2.
struct SpectralField2D {
    TorusGrid grid;
    std::vector<cplx> c;

    SpectralField2D() = default;
    explicit SpectralField2D(const TorusGrid& g) : grid(g), c(g.size(), cplx(0.0, 0.0)) {}

    cplx& at(std::uint32_t i, std::uint32_t j) { return c[std::size_t(i) * grid.n + j]; }
    const cplx& at(std::uint32_t i, std::uint32_t j) const { return c[std::size_t(i) * grid.n + j]; }

    cplx& mode(int m1, int m2) { return at(grid.index_of_freq(m1), grid.index_of_freq(m2)); }
    const cplx& mode(int m1, int m2) const {
        return at(grid.index_of_freq(m1), grid.index_of_freq(m2));
    }

    cplx mean() const { return c[0]; }
    void zero_mean() { c[0] = cplx(0.0, 0.0); }
};

// Collocation-side scalar field, row-major over (i,j) -> (x1,x2).
struct PhysField2D {
    TorusGrid grid;
    std::vector<double> v;

    PhysField2D() = default;
    explicit PhysField2D(const TorusGrid& g) : grid(g), v(g.size(), 0.0) {}

    double& at(std::uint32_t i, std::uint32_t j) { return v[std::size_t(i) * grid.n + j]; }
    const double& at(std::uint32_t i, std::uint32_t j) const { return v[std::size_t(i) * grid.n + j]; }
};

// Stack of horizontal fields on the slab levels, layer 0 at z = 0.
template <class Field>
struct Layered {
    SlabGrid slab;
    std::vector<Field> layer;

    Layered() = default;
    explicit Layered(const SlabGrid& s) : slab(s), layer(s.nz, Field(s.torus)) {}

    std::uint32_t nz() const { return slab.nz; }
};

using LayeredSpectral3D = Layered<SpectralField2D>;
using LayeredPhys3D = Layered<PhysField2D>;

// y += a * x, grids must coincide.
inline void axpy(SpectralField2D& y, double a, const SpectralField2D& x) {
    if (y.grid != x.grid) throw std::invalid_argument("axpy: grid mismatch");
    for (std::size_t i = 0; i < y.c.size(); ++i) y.c[i] += a * x.c[i];
}

inline void scale(SpectralField2D& y, double a) {
    for (auto& v : y.c) v *= a;
}

inline SpectralField2D scaled(const SpectralField2D& x, double a) {
    SpectralField2D y = x;
    scale(y, a);
    return y;
}

// Three-component vector field on the slab; component 0 is the z part and
// components 1,2 the horizontal parts, matching the (z, x1, x2) ordering of
// the analysis. Horizontal-only vectors keep comp[0] identically zero.
template <class Field>
struct LayeredVec3 {
    Layered<Field> comp[3];

    LayeredVec3() = default;
    explicit LayeredVec3(const SlabGrid& s) : comp{Layered<Field>(s), Layered<Field>(s), Layered<Field>(s)} {}
};

} // namespace qghs
