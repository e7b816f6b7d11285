#include "qghs/littlewood_paley.hpp"

#include <cmath>

namespace qghs {

std::vector<DyadicBand> dyadic_bands(const TorusGrid& g) {
    const double mmax = std::sqrt(2.0) * (g.n / 2); // largest |m| on the grid
    std::vector<DyadicBand> bands;
    for (int j = 0; std::pow(2.0, j) <= mmax; ++j) bands.push_back(DyadicBand{j});
    return bands;
}

SpectralField2D lp_project(const SpectralField2D& u, const DyadicBand& band) {
    const std::uint32_t n = u.grid.n;
    SpectralField2D out(u.grid);
    for (std::uint32_t i = 0; i < n; ++i) {
        const int m1 = u.grid.freq(i);
        for (std::uint32_t j = 0; j < n; ++j) {
            if (band.contains(m1, u.grid.freq(j))) out.at(i, j) = u.at(i, j);
        }
    }
    return out;
}

double besov_norm(const SpectralField2D& u, double alpha, double p) {
    require(p >= 1.0, "besov_norm: p must be >= 1");
    double best = 0.0;
    for (const DyadicBand& b : dyadic_bands(u.grid)) {
        const SpectralField2D proj = lp_project(u, b);
        bool empty = true;
        for (const auto& z : proj.c) {
            if (z != cplx(0.0, 0.0)) { empty = false; break; }
        }
        if (empty) continue;
        const double norm = lp_norm(inverse_transform(proj), p);
        best = std::max(best, std::pow(2.0, b.j * alpha) * norm);
    }
    return best;
}

std::vector<double> band_energies(const SpectralField2D& u) {
    const auto bands = dyadic_bands(u.grid);
    std::vector<double> e(bands.size(), 0.0);
    const std::uint32_t n = u.grid.n;
    const double w = u.grid.l * u.grid.l;
    for (std::uint32_t i = 0; i < n; ++i) {
        const int m1 = u.grid.freq(i);
        for (std::uint32_t j = 0; j < n; ++j) {
            const int m2 = u.grid.freq(j);
            for (std::size_t b = 0; b < bands.size(); ++b) {
                if (bands[b].contains(m1, m2)) {
                    e[b] += w * std::norm(u.at(i, j));
                    break;
                }
            }
        }
    }
    return e;
}

} // namespace qghs
