#include "qghs/harmonic.hpp"

#include <cmath>

namespace qghs {
namespace {

void zero_nyquist(SpectralField2D& f) {
    const std::uint32_t n = f.grid.n;
    for (std::uint32_t j = 0; j < n; ++j) {
        f.at(n / 2, j) = cplx(0.0, 0.0);
        f.at(j, n / 2) = cplx(0.0, 0.0);
    }
}

} // namespace

SpectralField2D riesz(const SpectralField2D& f, int j) {
    require(j == 1 || j == 2, "riesz: component must be 1 or 2");
    SpectralField2D out = apply_multiplier_homogeneous(f, [j](double k1, double k2) {
        const double mag = std::hypot(k1, k2);
        const double kj = (j == 1) ? k1 : k2;
        return cplx(0.0, -kj / mag);
    });
    zero_nyquist(out);
    return out;
}

std::array<SpectralField2D, 2> riesz_perp(const SpectralField2D& f) {
    SpectralField2D u1 = riesz(f, 2);
    for (auto& z : u1.c) z = -z;
    return {std::move(u1), riesz(f, 1)};
}

SpectralField2D lambda_pow(const SpectralField2D& f, double s) {
    if (s < 0.0) {
        double maxc = 0.0;
        for (const auto& z : f.c) maxc = std::max(maxc, std::abs(z));
        require(std::abs(f.mean()) <= 1e-13 * std::max(maxc, 1e-300),
                "lambda_pow: negative order requires zero-mean input");
    }
    return apply_multiplier_homogeneous(f, [s](double k1, double k2) {
        return cplx(std::pow(std::hypot(k1, k2), s), 0.0);
    });
}

SpectralField2D poisson_extend(const SpectralField2D& f, double z) {
    require(z >= 0.0, "poisson_extend: height must be nonnegative");
    return apply_multiplier_homogeneous(f, [z](double k1, double k2) {
        return cplx(std::exp(-z * std::hypot(k1, k2)), 0.0);
    });
}

SpectralField2D dirichlet_to_neumann(const SpectralField2D& f) { return lambda_pow(f, 1.0); }

} // namespace qghs
