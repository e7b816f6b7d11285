#include <doctest.h>

#include "qghs/spectral_ops.hpp"

#include "test_util.hpp"

using namespace qghs;
using namespace qghs::testutil;

namespace {

// Dense convolution oracle: (fg)hat(m) = sum_{a+b=m mod n} fhat(a) ghat(b),
// then restricted to the 2/3 band. O(n^4), small n only.
SpectralField2D conv_oracle(const SpectralField2D& f, const SpectralField2D& g) {
    const TorusGrid& gr = f.grid;
    const int n = static_cast<int>(gr.n);
    SpectralField2D out(gr);
    for (std::uint32_t i = 0; i < gr.n; ++i)
        for (std::uint32_t j = 0; j < gr.n; ++j)
            for (std::uint32_t a = 0; a < gr.n; ++a)
                for (std::uint32_t b = 0; b < gr.n; ++b) {
                    std::uint32_t ia = (i + gr.n - a) % gr.n;
                    std::uint32_t jb = (j + gr.n - b) % gr.n;
                    out.at(i, j) += f.at(a, b) * g.at(ia, jb);
                }
    const int lim = static_cast<int>(gr.dealias_limit());
    for (std::uint32_t i = 0; i < gr.n; ++i)
        for (std::uint32_t j = 0; j < gr.n; ++j)
            if (std::abs(gr.freq(i)) > lim || std::abs(gr.freq(j)) > lim)
                out.at(i, j) = cplx(0.0, 0.0);
    (void)n;
    return out;
}

} // namespace

TEST_SUITE("spectral_ops") {

TEST_CASE("derivative of a single mode is exact") {
    TorusGrid g{32, 2.0 * M_PI};
    SpectralField2D f(g);
    f.mode(3, -2) = cplx(0.25, -0.5);
    f.mode(-3, 2) = std::conj(f.mode(3, -2));
    SpectralField2D d1 = deriv(f, 1);
    SpectralField2D d2 = deriv(f, 2);
    CHECK(std::abs(d1.mode(3, -2) - cplx(0.0, 3.0) * f.mode(3, -2)) < 1e-15);
    CHECK(std::abs(d2.mode(3, -2) - cplx(0.0, -2.0) * f.mode(3, -2)) < 1e-15);
}

TEST_CASE("derivative annihilates the Nyquist lines") {
    TorusGrid g{16, 2.0 * M_PI};
    SpectralField2D f(g);
    f.mode(-8, 1) = cplx(1.0, 0.0);
    f.mode(-8, -1) = cplx(1.0, 0.0);
    SpectralField2D d = deriv(f, 1);
    for (const auto& c : d.c) CHECK(std::abs(c) == 0.0);
}

TEST_CASE("dealias zeroes exactly the modes beyond n/3") {
    TorusGrid g{32, 2.0 * M_PI};
    SpectralField2D f(g);
    for (auto& c : f.c) c = cplx(1.0, 0.0);
    SpectralField2D t = dealias(f);
    const int lim = static_cast<int>(g.dealias_limit());
    for (std::uint32_t i = 0; i < g.n; ++i)
        for (std::uint32_t j = 0; j < g.n; ++j) {
            bool inside = std::abs(g.freq(i)) <= lim && std::abs(g.freq(j)) <= lim;
            CHECK(std::abs(t.at(i, j)) == (inside ? 1.0 : 0.0));
        }
    CHECK(is_dealiased(t));
    CHECK_FALSE(is_dealiased(f));
}

TEST_CASE("dealiased product matches the dense convolution oracle") {
    TorusGrid g{16, 2.0 * M_PI};
    SpectralField2D a = random_band_field(g, 5, 1, 5, 1.0);
    SpectralField2D b = random_band_field(g, 6, 1, 5, 1.0);
    SpectralField2D fast = product_dealiased(a, b);
    SpectralField2D slow = conv_oracle(a, b);
    CHECK(max_coeff_dev(fast, slow) < 1e-13);
}

TEST_CASE("apply_multiplier evaluates the symbol at the signed wavevector") {
    TorusGrid g{16, 2.0 * M_PI};
    SpectralField2D f(g);
    f.mode(2, -3) = cplx(1.0, 1.0);
    f.mode(-2, 3) = std::conj(f.mode(2, -3));
    // Imaginary part odd in k so the symbol is Hermitian-symmetric and the
    // sign of the sampled wavevector is still visible in the output.
    SpectralField2D out =
        apply_multiplier(f, [](double k1, double k2) { return cplx(k1 * k1, k2); });
    CHECK(std::abs(out.mode(2, -3) - cplx(1.0, 1.0) * cplx(4.0, -3.0)) < 1e-14);
    CHECK(std::abs(out.mode(-2, 3) - std::conj(out.mode(2, -3))) < 1e-14);
}

TEST_CASE("homogeneous variant never samples the symbol at zero") {
    TorusGrid g{16, 2.0 * M_PI};
    SpectralField2D f(g);
    f.c[0] = cplx(4.0, 0.0); // nonzero mean
    f.mode(1, 0) = cplx(0.5, 0.0);
    f.mode(-1, 0) = cplx(0.5, 0.0);
    SpectralField2D out = apply_multiplier_homogeneous(
        f, [](double k1, double k2) { return cplx(1.0 / std::hypot(k1, k2), 0.0); });
    CHECK(std::abs(out.mean()) == 0.0);
    CHECK(std::abs(out.mode(1, 0) - cplx(0.5, 0.0)) < 1e-15);
    // The plain variant must reject the same symbol (non-finite at 0).
    CHECK_THROWS(apply_multiplier(
        f, [](double k1, double k2) { return cplx(1.0 / std::hypot(k1, k2), 0.0); }));
}

TEST_CASE("shift translates by whole cells exactly") {
    TorusGrid g{16, 2.0 * M_PI};
    PhysField2D f = random_phys(g, 21);
    PhysField2D s = shift(f, 3, -2);
    for (std::uint32_t i = 0; i < g.n; ++i)
        for (std::uint32_t j = 0; j < g.n; ++j)
            CHECK(s.at(i, j) == f.at((i + g.n - 3) % g.n, (j + 2) % g.n));
}

TEST_CASE("lp_norm agrees with direct quadrature") {
    TorusGrid g{16, 2.0 * M_PI};
    PhysField2D f = random_phys(g, 8);
    for (double p : {1.0, 2.0, 3.0, 4.0}) {
        double acc = 0.0;
        for (double v : f.v) acc += std::pow(std::fabs(v), p);
        acc = std::pow(acc * g.dx() * g.dx(), 1.0 / p);
        CHECK(lp_norm(f, p) == doctest::Approx(acc).epsilon(1e-13));
    }
    double mx = 0.0;
    for (double v : f.v) mx = std::max(mx, std::fabs(v));
    CHECK(linf_norm(f) == mx);
}

TEST_CASE("random band fields are deterministic, zero-mean, band-limited") {
    TorusGrid g{64, 2.0 * M_PI};
    SpectralField2D a = random_band_field(g, 42, 2, 6, 1.5);
    SpectralField2D b = random_band_field(g, 42, 2, 6, 1.5);
    CHECK(max_coeff_dev(a, b) == 0.0);
    SpectralField2D c = random_band_field(g, 43, 2, 6, 1.5);
    CHECK(max_coeff_dev(a, c) > 0.0);

    CHECK(std::abs(a.mean()) == 0.0);
    for (std::uint32_t i = 0; i < g.n; ++i)
        for (std::uint32_t j = 0; j < g.n; ++j) {
            double mag = std::hypot(double(g.freq(i)), double(g.freq(j)));
            if ((mag < 2.0 || mag > 6.0) && std::abs(a.at(i, j)) != 0.0) FAIL("mode outside band");
        }
    CHECK(hermitian_defect(a) == 0.0);
    double peak = linf_norm(inverse_transform(a));
    CHECK(peak == doctest::Approx(1.5).epsilon(1e-10));
}

} // TEST_SUITE
