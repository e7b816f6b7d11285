#include <doctest.h>

#include "qghs/spectral_ops.hpp"
#include "qghs/transform.hpp"

#include "test_util.hpp"

using namespace qghs;
using namespace qghs::testutil;

TEST_SUITE("transform") {

TEST_CASE("forward transform matches the direct DFT oracle") {
    TorusGrid g{16, 2.0 * M_PI};
    PhysField2D f = random_phys(g, 11);
    SpectralField2D fast = forward_transform(f);
    SpectralField2D slow = dft_oracle(f);
    CHECK(max_coeff_dev(fast, slow) < 1e-13);
}

TEST_CASE("round trip is the identity") {
    for (std::uint32_t n : {8u, 16u, 64u}) {
        TorusGrid g{n, 2.0 * M_PI};
        PhysField2D f = random_phys(g, 100 + n);
        PhysField2D back = inverse_transform(forward_transform(f));
        CHECK(max_value_dev(f, back) < 1e-12);
    }
}

TEST_CASE("single mode lands on the documented coefficient") {
    TorusGrid g{16, 2.0 * M_PI};
    PhysField2D f(g);
    for (std::uint32_t i = 0; i < g.n; ++i)
        for (std::uint32_t j = 0; j < g.n; ++j)
            f.at(i, j) = std::cos(3.0 * (i * g.dx())) + 2.0 * std::sin(2.0 * (j * g.dx()));
    SpectralField2D c = forward_transform(f);
    CHECK(std::abs(c.mode(3, 0) - cplx(0.5, 0.0)) < 1e-13);
    CHECK(std::abs(c.mode(-3, 0) - cplx(0.5, 0.0)) < 1e-13);
    CHECK(std::abs(c.mode(0, 2) - cplx(0.0, -1.0)) < 1e-13);
    CHECK(std::abs(c.mode(0, -2) - cplx(0.0, 1.0)) < 1e-13);
    CHECK(std::abs(c.mode(1, 1)) < 1e-13);
}

TEST_CASE("non-unit period scales the wavevector, not the coefficients") {
    TorusGrid g{16, 4.0 * M_PI};
    PhysField2D f(g);
    // cos(k x) with k = 2*pi*m/l = m/2 at m = 1.
    for (std::uint32_t i = 0; i < g.n; ++i)
        for (std::uint32_t j = 0; j < g.n; ++j) f.at(i, j) = std::cos(0.5 * i * g.dx());
    SpectralField2D c = forward_transform(f);
    CHECK(std::abs(c.mode(1, 0) - cplx(0.5, 0.0)) < 1e-13);
    CHECK(g.k1(1) == doctest::Approx(0.5).epsilon(1e-14));
}

TEST_CASE("Parseval identity holds to 1e-12 relative") {
    for (double l : {2.0 * M_PI, 5.0}) {
        TorusGrid g{32, l};
        PhysField2D f = random_phys(g, 7);
        double phys = grid_l2sq(f);
        double spec = spectral_l2sq(forward_transform(f));
        CHECK(std::fabs(phys - spec) < 1e-12 * phys);
    }
}

TEST_CASE("inverse transform rejects non-Hermitian data") {
    TorusGrid g{16, 2.0 * M_PI};
    SpectralField2D c(g);
    c.mode(1, 0) = cplx(1.0, 0.3);
    c.mode(-1, 0) = cplx(1.0, 0.3); // conj would be (1, -0.3)
    CHECK(hermitian_defect(c) > 0.1);
    CHECK_THROWS(inverse_transform(c));
    c.mode(-1, 0) = std::conj(c.mode(1, 0));
    CHECK(hermitian_defect(c) < 1e-15);
    CHECK_NOTHROW(inverse_transform(c));
}

TEST_CASE("transforms are deterministic across repeated plans") {
    TorusGrid g{64, 2.0 * M_PI};
    PhysField2D f = random_phys(g, 3);
    SpectralField2D a = forward_transform(f);
    SpectralField2D b = forward_transform(f);
    CHECK(max_coeff_dev(a, b) == 0.0);
}

} // TEST_SUITE
