#include <doctest.h>

#include "qghs/elliptic.hpp"
#include "qghs/prepare.hpp"
#include "qghs/spectral_ops.hpp"

#include "test_util.hpp"

using namespace qghs;
using namespace qghs::testutil;

namespace {

SlabGrid small_slab() { return SlabGrid{TorusGrid{32, 2.0 * M_PI}, 16, M_PI}; }

LayeredPhys3D random_omega(const SlabGrid& slab, std::uint64_t seed) {
    LayeredPhys3D om(slab);
    for (std::uint32_t iz = 0; iz < slab.nz; ++iz) om.layer[iz] = random_phys(slab.torus, seed + iz);
    return om;
}

} // namespace

TEST_SUITE("prepare") {

TEST_CASE("no Lq norm grows through preparation") {
    SlabGrid slab = small_slab();
    LayeredPhys3D om = random_omega(slab, 40);
    SpectralField2D th = random_band_field(slab.torus, 41, 1, 8, 2.0);

    PreparedData out = prepare_data(om, th, 0.5);
    LayeredPhys3D om_out = to_physical(out.omega);
    for (double q : {1.5, 2.0, 3.0})
        CHECK(slab_lq_norm(om_out, q) <= slab_lq_norm(om, q) + 1e-10);
    CHECK(slab_linf_norm(om_out) <= slab_linf_norm(om) + 1e-10);

    PhysField2D th_in = inverse_transform(th);
    PhysField2D th_out = inverse_transform(out.theta);
    for (double p : {2.0, 3.0, 4.0}) CHECK(lp_norm(th_out, p) <= lp_norm(th_in, p) + 1e-10);
}

TEST_CASE("large values are cut before smoothing") {
    SlabGrid slab = small_slab();
    // eps = 0.5 puts the cutoff at 2: a field of constant magnitude 5 is
    // masked everywhere, so the output is identically zero.
    LayeredPhys3D om(slab);
    for (auto& lay : om.layer)
        for (auto& v : lay.v) v = 5.0;
    SpectralField2D th(slab.torus);
    PreparedData out = prepare_data(om, th, 0.5);
    for (const auto& lay : out.omega.layer)
        for (const auto& c : lay.c) CHECK(std::abs(c) == 0.0);
}

TEST_CASE("far field outside the admissibility ball is removed") {
    SlabGrid slab = small_slab();
    // Radius 1/eps = 1.25 around the box centre at height 0: the top layers
    // sit above the ball and must come out zero even for small values.
    LayeredPhys3D om(slab);
    for (auto& lay : om.layer)
        for (auto& v : lay.v) v = 0.01;
    SpectralField2D th(slab.torus);
    PreparedData out = prepare_data(om, th, 0.8);
    std::uint32_t high = slab.nz - 1;
    REQUIRE(slab.z(high) > 1.0 / 0.8);
    double top = 0.0;
    for (const auto& c : out.omega.layer[high].c) top = std::max(top, std::abs(c));
    CHECK(top < 1e-14);
}

TEST_CASE("empty omega passes through untouched") {
    SlabGrid slab = small_slab();
    LayeredPhys3D om;
    om.slab = slab;
    SpectralField2D th = random_band_field(slab.torus, 43, 1, 6, 1.0);
    PreparedData out = prepare_data(om, th, 0.5);
    CHECK(out.omega.layer.empty());
    CHECK(out.omega.slab == slab);
}

TEST_CASE("invalid eps is rejected") {
    SlabGrid slab = small_slab();
    LayeredPhys3D om;
    om.slab = slab;
    SpectralField2D th(slab.torus);
    CHECK_THROWS(prepare_data(om, th, 0.0));
    CHECK_THROWS(prepare_data(om, th, -1.0));
}

} // TEST_SUITE
