#pragma once

#include "qghs/field.hpp"
#include "qghs/transform.hpp"

#include <cmath>
#include <random>

namespace qghs::testutil {

// Quadrature-side DFT oracle, O(n^4): coefficients straight from the
// definition fhat(m) = n^{-2} sum_x f(x) e^{-i k(m).x}.
inline SpectralField2D dft_oracle(const PhysField2D& f) {
    const TorusGrid& g = f.grid;
    SpectralField2D out(g);
    for (std::uint32_t i = 0; i < g.n; ++i) {
        for (std::uint32_t j = 0; j < g.n; ++j) {
            cplx acc(0.0, 0.0);
            for (std::uint32_t a = 0; a < g.n; ++a) {
                for (std::uint32_t b = 0; b < g.n; ++b) {
                    double phase = -2.0 * M_PI *
                                   (double(g.freq(i)) * a + double(g.freq(j)) * b) / g.n;
                    acc += f.at(a, b) * cplx(std::cos(phase), std::sin(phase));
                }
            }
            out.at(i, j) = acc / double(g.size());
        }
    }
    return out;
}

inline double max_coeff_dev(const SpectralField2D& a, const SpectralField2D& b) {
    double dev = 0.0;
    for (std::size_t i = 0; i < a.c.size(); ++i) dev = std::max(dev, std::abs(a.c[i] - b.c[i]));
    return dev;
}

inline double max_value_dev(const PhysField2D& a, const PhysField2D& b) {
    double dev = 0.0;
    for (std::size_t i = 0; i < a.v.size(); ++i) dev = std::max(dev, std::fabs(a.v[i] - b.v[i]));
    return dev;
}

inline double max_abs_coeff(const SpectralField2D& a) {
    double m = 0.0;
    for (const auto& c : a.c) m = std::max(m, std::abs(c));
    return m;
}

// Seeded smooth random physical field (not band-limited; for quadrature and
// mollifier property tests).
inline PhysField2D random_phys(const TorusGrid& g, std::uint64_t seed) {
    std::mt19937_64 eng(seed);
    std::normal_distribution<double> dist;
    PhysField2D f(g);
    for (auto& v : f.v) v = dist(eng);
    return f;
}

// Evaluate a spectral field at an arbitrary point by direct summation.
inline double eval_at(const SpectralField2D& f, double x1, double x2) {
    const TorusGrid& g = f.grid;
    cplx acc(0.0, 0.0);
    for (std::uint32_t i = 0; i < g.n; ++i)
        for (std::uint32_t j = 0; j < g.n; ++j) {
            double phase = g.k1(i) * x1 + g.k2(j) * x2;
            acc += f.at(i, j) * cplx(std::cos(phase), std::sin(phase));
        }
    return acc.real();
}

} // namespace qghs::testutil
