#include "qghs/prepare.hpp"

#include "qghs/errors.hpp"
#include "qghs/transform.hpp"

#include <cmath>

namespace qghs {

namespace {

// Distance from (x1,x2) to the box centre, shortest periodic image.
double torus_dist(const TorusGrid& g, std::size_t i, std::size_t j) {
    double cx = 0.5 * g.l;
    double dx1 = std::fabs(static_cast<double>(i) * g.dx() - cx);
    double dx2 = std::fabs(static_cast<double>(j) * g.dx() - cx);
    dx1 = std::min(dx1, g.l - dx1);
    dx2 = std::min(dx2, g.l - dx2);
    return std::hypot(dx1, dx2);
}

void mask_layer(PhysField2D& f, double cutoff, double radius, double z) {
    const TorusGrid& g = f.grid;
    for (std::size_t i = 0; i < g.n; ++i) {
        for (std::size_t j = 0; j < g.n; ++j) {
            double& v = f.v[i * g.n + j];
            if (std::fabs(v) >= cutoff) v = 0.0;
            else if (std::hypot(torus_dist(g, i, j), z) >= radius) v = 0.0;
        }
    }
}

} // namespace

PreparedData prepare_data(const LayeredPhys3D& omega_raw, const SpectralField2D& theta_raw,
                          double eps) {
    const SlabGrid& slab = omega_raw.slab;
    require(slab.torus == theta_raw.grid, "prepare_data: omega and theta live on different grids");
    require(std::isfinite(eps) && eps > 0.0, "prepare_data: eps must be positive");
    require(omega_raw.layer.empty() || omega_raw.layer.size() == slab.nz,
            "prepare_data: omega must hold zero or nz layers");

    const double cutoff = 1.0 / eps;
    Mollifier moll(slab.torus, eps); // rejects eps below grid resolution

    // theta: mask in physical space, then one 2-D pass.
    PhysField2D theta_phys = inverse_transform(theta_raw);
    mask_layer(theta_phys, cutoff, cutoff, 0.0);
    PreparedData out;
    out.omega.slab = slab;
    out.theta = forward_transform(mollify(theta_phys, moll));
    if (omega_raw.layer.empty()) return out; // canonical zero passes through

    // omega: mask per layer, horizontal pass per layer, then a vertical pass
    // along every column with mirror extension so boundary layers keep the
    // convex-average property.
    std::vector<PhysField2D> layers;
    layers.reserve(slab.nz);
    for (std::size_t iz = 0; iz < slab.nz; ++iz) {
        PhysField2D lay = omega_raw.layer[iz];
        mask_layer(lay, cutoff, cutoff, slab.z(iz));
        layers.push_back(mollify(lay, moll));
    }

    Mollifier1D vert(slab.dz(), eps);
    const std::size_t npts = slab.torus.size();
    std::vector<double> column(slab.nz);
    for (std::size_t p = 0; p < npts; ++p) {
        for (std::size_t iz = 0; iz < slab.nz; ++iz) column[iz] = layers[iz].v[p];
        std::vector<double> smoothed = mollify_profile_mirror(column, vert);
        for (std::size_t iz = 0; iz < slab.nz; ++iz) layers[iz].v[p] = smoothed[iz];
    }

    out.omega.layer.reserve(slab.nz);
    for (std::size_t iz = 0; iz < slab.nz; ++iz)
        out.omega.layer.push_back(forward_transform(layers[iz]));
    return out;
}

} // namespace qghs
