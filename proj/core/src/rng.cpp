#include "qghs/rng.hpp"

#include "qghs/errors.hpp"
#include "qghs/spectral_ops.hpp"

#include <cmath>

namespace qghs {

SpectralField2D cosine_mode(const TorusGrid& grid, int m1, int m2, double amp) {
    require(m1 != 0 || m2 != 0, "cosine_mode: zero mode is not admissible data");
    int half = static_cast<int>(grid.n) / 2;
    require(std::abs(m1) < half && std::abs(m2) < half,
            "cosine_mode: mode outside the resolvable band");
    SpectralField2D f(grid);
    f.mode(m1, m2) += cplx(0.5 * amp, 0.0);
    f.mode(-m1, -m2) += cplx(0.5 * amp, 0.0);
    return f;
}

SpectralField2D make_theta(const ThetaInit& spec, const TorusGrid& grid) {
    if (spec.kind == "zero") return SpectralField2D(grid);
    if (spec.kind == "single_mode") return cosine_mode(grid, spec.m1, spec.m2, spec.amp);
    if (spec.kind == "random_band")
        return random_band_field(grid, spec.seed, spec.kmin, spec.kmax, spec.amp);
    throw std::invalid_argument("make_theta: unknown kind '" + spec.kind + "'");
}

LayeredSpectral3D make_omega(const OmegaInit& spec, const SlabGrid& slab) {
    LayeredSpectral3D out;
    out.slab = slab;
    out.layer.reserve(slab.nz);
    if (spec.kind == "zero") {
        for (std::size_t iz = 0; iz < slab.nz; ++iz)
            out.layer.emplace_back(slab.torus);
        return out;
    }
    if (spec.kind == "band_profile") {
        require(spec.zw > 0.0, "make_omega: profile width must be positive");
        SpectralField2D base =
            random_band_field(slab.torus, spec.seed, spec.kmin, spec.kmax, spec.amp);
        for (std::size_t iz = 0; iz < slab.nz; ++iz) {
            double s = (slab.z(iz) - spec.z0) / spec.zw;
            double w = std::exp(-s * s);
            SpectralField2D lay = base;
            for (auto& c : lay.c) c *= w;
            out.layer.push_back(std::move(lay));
        }
        return out;
    }
    throw std::invalid_argument("make_omega: unknown kind '" + spec.kind + "'");
}

} // namespace qghs
