#pragma once

#include <cmath>
#include <cstdint>

#include "qghs/errors.hpp"

namespace qghs {

inline bool is_pow2(std::uint32_t v) { return v >= 1 && (v & (v - 1)) == 0; }

// Uniform n x n grid on the periodic square [0,l)^2. Collocation points
// x_ij = (i*dx, j*dx). Fourier coefficients are indexed by integer
// frequencies m in [-n/2, n/2) per axis; the physical wavevector is
// k = (2*pi/l) * m. Index i maps to m = i for i < n/2 and m = i - n
// otherwise (the Nyquist index n/2 carries m = -n/2).
struct TorusGrid {
    std::uint32_t n = 0;
    double l = 0.0;

    TorusGrid() = default;
    TorusGrid(std::uint32_t n_, double l_) : n(n_), l(l_) {
        require(n >= 8 && is_pow2(n), "TorusGrid: n must be a power of two >= 8");
        require(l > 0.0 && std::isfinite(l), "TorusGrid: period l must be positive");
    }

    double dx() const { return l / n; }
    std::uint32_t size() const { return n * n; }

    int freq(std::uint32_t i) const {
        return i < n / 2 ? static_cast<int>(i) : static_cast<int>(i) - static_cast<int>(n);
    }
    std::uint32_t index_of_freq(int m) const {
        return static_cast<std::uint32_t>(m >= 0 ? m : m + static_cast<int>(n));
    }

    // Physical wavevector components for flat index (i,j).
    double k1(std::uint32_t i) const { return 2.0 * M_PI / l * freq(i); }
    double k2(std::uint32_t j) const { return 2.0 * M_PI / l * freq(j); }

    // 2/3-rule resolved band: integer frequencies with max(|m1|,|m2|) <= n/3.
    std::uint32_t dealias_limit() const { return n / 3; }

    bool operator==(const TorusGrid& o) const { return n == o.n && l == o.l; }
    bool operator!=(const TorusGrid& o) const { return !(*this == o); }
};

// Vertical levels z_i = i*dz, i = 0..nz-1, spanning [0,h] with
// dz = h/(nz-1). Level 0 is the physical boundary z = 0; level nz-1 is the
// artificial top at z = h where the radiation condition is imposed.
struct SlabGrid {
    TorusGrid torus;
    std::uint32_t nz = 0;
    double h = 0.0;

    SlabGrid() = default;
    SlabGrid(const TorusGrid& t, std::uint32_t nz_, double h_) : torus(t), nz(nz_), h(h_) {
        require(nz >= 16, "SlabGrid: nz must be >= 16");
        require(h >= 0.5 * torus.l, "SlabGrid: height h must be >= l/2");
        require(std::isfinite(h), "SlabGrid: height h must be finite");
    }

    double dz() const { return h / (nz - 1); }
    double z(std::uint32_t i) const { return i * dz(); }

    // Trapezoid weight for level i (used by every slab quadrature).
    double zweight(std::uint32_t i) const {
        return (i == 0 || i == nz - 1) ? 0.5 * dz() : dz();
    }

    bool operator==(const SlabGrid& o) const {
        return torus == o.torus && nz == o.nz && h == o.h;
    }
    bool operator!=(const SlabGrid& o) const { return !(*this == o); }
};

} // namespace qghs
