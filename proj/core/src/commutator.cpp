#include "qghs/commutator.hpp"

#include <cmath>

#include "qghs/spectral_ops.hpp"

namespace qghs {

double integrate_product(const SpectralField2D& a, const SpectralField2D& b) {
    // int a b dx over the torus; exact for band-limited grids by Parseval.
    require(a.grid == b.grid, "integrate_product: grid mismatch");
    double s = 0.0;
    for (std::size_t m = 0; m < a.c.size(); ++m)
        s += (a.c[m] * std::conj(b.c[m])).real();
    return a.grid.l * a.grid.l * s;
}

std::array<SpectralField2D, 2> calderon_commutator(const SpectralField2D& theta,
                                                   const SpectralField2D& phi) {
    require(theta.grid == phi.grid, "calderon_commutator: grid mismatch");
    const SpectralField2D lam_inv = lambda_pow(theta, -1.0);
    std::array<SpectralField2D, 2> out{SpectralField2D(theta.grid), SpectralField2D(theta.grid)};
    for (int j = 1; j <= 2; ++j) {
        const SpectralField2D dphi = deriv(phi, j);
        const SpectralField2D inner = product_dealiased(dphi, lam_inv);
        const SpectralField2D lifted = dirichlet_to_neumann(inner);
        SpectralField2D low = product_dealiased(dphi, theta);
        for (std::size_t m = 0; m < low.c.size(); ++m) low.c[m] = lifted.c[m] - low.c[m];
        out[static_cast<std::size_t>(j - 1)] = std::move(low);
    }
    return out;
}

double nonlinear_flux_direct(const SpectralField2D& theta, const SpectralField2D& phi) {
    require(theta.grid == phi.grid, "nonlinear_flux_direct: grid mismatch");
    const auto u = riesz_perp(theta);
    const SpectralField2D adv1 = product_dealiased(u[0], theta);
    const SpectralField2D adv2 = product_dealiased(u[1], theta);
    return integrate_product(adv1, deriv(phi, 1)) + integrate_product(adv2, deriv(phi, 2));
}

double nonlinear_flux_commutator(const SpectralField2D& theta, const SpectralField2D& phi) {
    require(theta.grid == phi.grid, "nonlinear_flux_commutator: grid mismatch");
    const auto u = riesz_perp(theta);
    const auto c = calderon_commutator(theta, phi);
    return 0.5 * (integrate_product(u[0], c[0]) + integrate_product(u[1], c[1]));
}

MollifierCommutatorCheck mollifier_commutator_check(const PhysField2D& f, const PhysField2D& g,
                                                    const Mollifier& m) {
    require(f.grid == g.grid && f.grid == m.grid, "mollifier_commutator_check: grid mismatch");
    const std::uint32_t n = f.grid.n;

    PhysField2D fg(f.grid);
    for (std::size_t i = 0; i < fg.v.size(); ++i) fg.v[i] = f.v[i] * g.v[i];
    const PhysField2D fg_m = mollify(fg, m);
    const PhysField2D f_m = mollify(f, m);
    const PhysField2D g_m = mollify(g, m);

    MollifierCommutatorCheck out;
    out.direct = PhysField2D(f.grid);
    for (std::size_t i = 0; i < fg.v.size(); ++i)
        out.direct.v[i] = fg_m.v[i] - f_m.v[i] * g_m.v[i];

    const auto wrap = [n](int i) {
        int v = i % static_cast<int>(n);
        return static_cast<std::uint32_t>(v < 0 ? v + static_cast<int>(n) : v);
    };
    out.via_rep = PhysField2D(f.grid);
    for (std::uint32_t i = 0; i < n; ++i) {
        for (std::uint32_t j = 0; j < n; ++j) {
            double acc = 0.0;
            const double fx = f.at(i, j);
            const double gm = g_m.at(i, j);
            for (int a = -m.r; a <= m.r; ++a) {
                const std::uint32_t ia = wrap(int(i) - a);
                for (int b = -m.r; b <= m.r; ++b) {
                    const std::uint32_t jb = wrap(int(j) - b);
                    acc += m.weight(a, b) * (f.at(ia, jb) - fx) * (g.at(ia, jb) - gm);
                }
            }
            out.via_rep.at(i, j) = acc;
        }
    }

    for (std::size_t i = 0; i < fg.v.size(); ++i)
        out.max_deviation = std::max(out.max_deviation,
                                     std::abs(out.direct.v[i] - out.via_rep.v[i]));
    return out;
}

} // namespace qghs
