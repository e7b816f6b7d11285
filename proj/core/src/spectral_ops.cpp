#include "qghs/spectral_ops.hpp"

#include <cmath>
#include <random>

namespace qghs {

SpectralField2D apply_multiplier(const SpectralField2D& f, const Multiplier& m) {
    const std::uint32_t n = f.grid.n;
    SpectralField2D out(f.grid);
    for (std::uint32_t i = 0; i < n; ++i) {
        const double k1 = f.grid.k1(i);
        for (std::uint32_t j = 0; j < n; ++j) {
            const double k2 = f.grid.k2(j);
            const cplx mv = m(k1, k2);
            require(std::isfinite(mv.real()) && std::isfinite(mv.imag()),
                    "apply_multiplier: symbol is singular at a sampled wavevector");
            out.at(i, j) = mv * f.at(i, j);
        }
    }
    return out;
}

SpectralField2D apply_multiplier_homogeneous(const SpectralField2D& f, const Multiplier& m) {
    const std::uint32_t n = f.grid.n;
    SpectralField2D out(f.grid);
    for (std::uint32_t i = 0; i < n; ++i) {
        const double k1 = f.grid.k1(i);
        for (std::uint32_t j = 0; j < n; ++j) {
            if (i == 0 && j == 0) continue;
            const double k2 = f.grid.k2(j);
            const cplx mv = m(k1, k2);
            require(std::isfinite(mv.real()) && std::isfinite(mv.imag()),
                    "apply_multiplier: symbol is singular at a sampled wavevector");
            out.at(i, j) = mv * f.at(i, j);
        }
    }
    return out;
}

void dealias_inplace(SpectralField2D& f) {
    const std::uint32_t n = f.grid.n;
    const int lim = static_cast<int>(f.grid.dealias_limit());
    for (std::uint32_t i = 0; i < n; ++i) {
        const int m1 = f.grid.freq(i);
        for (std::uint32_t j = 0; j < n; ++j) {
            const int m2 = f.grid.freq(j);
            if (std::abs(m1) > lim || std::abs(m2) > lim) f.at(i, j) = cplx(0.0, 0.0);
        }
    }
}

SpectralField2D dealias(const SpectralField2D& f) {
    SpectralField2D out = f;
    dealias_inplace(out);
    return out;
}

bool is_dealiased(const SpectralField2D& f) {
    const std::uint32_t n = f.grid.n;
    const int lim = static_cast<int>(f.grid.dealias_limit());
    for (std::uint32_t i = 0; i < n; ++i) {
        const int m1 = f.grid.freq(i);
        for (std::uint32_t j = 0; j < n; ++j) {
            const int m2 = f.grid.freq(j);
            if ((std::abs(m1) > lim || std::abs(m2) > lim) && f.at(i, j) != cplx(0.0, 0.0))
                return false;
        }
    }
    return true;
}

SpectralField2D deriv(const SpectralField2D& f, int j) {
    require(j == 1 || j == 2, "deriv: component must be 1 or 2");
    const std::uint32_t n = f.grid.n;
    SpectralField2D out(f.grid);
    for (std::uint32_t i = 0; i < n; ++i) {
        for (std::uint32_t jj = 0; jj < n; ++jj) {
            if (i == n / 2 || jj == n / 2) continue; // Nyquist has no odd-symbol image
            const double k = (j == 1) ? f.grid.k1(i) : f.grid.k2(jj);
            out.at(i, jj) = cplx(0.0, k) * f.at(i, jj);
        }
    }
    return out;
}

SpectralField2D product_dealiased(const SpectralField2D& a, const SpectralField2D& b) {
    require(a.grid == b.grid, "product_dealiased: grid mismatch");
    PhysField2D pa = inverse_transform(a);
    PhysField2D pb = inverse_transform(b);
    PhysField2D prod(a.grid);
    for (std::size_t i = 0; i < prod.v.size(); ++i) prod.v[i] = pa.v[i] * pb.v[i];
    SpectralField2D out = forward_transform(prod);
    dealias_inplace(out);
    return out;
}

PhysField2D shift(const PhysField2D& f, int s1, int s2) {
    const std::uint32_t n = f.grid.n;
    PhysField2D out(f.grid);
    const auto wrap = [n](int i) {
        int r = i % static_cast<int>(n);
        return static_cast<std::uint32_t>(r < 0 ? r + static_cast<int>(n) : r);
    };
    for (std::uint32_t i = 0; i < n; ++i)
        for (std::uint32_t j = 0; j < n; ++j)
            out.at(i, j) = f.at(wrap(int(i) - s1), wrap(int(j) - s2));
    return out;
}

double lp_norm(const PhysField2D& f, double p) {
    require(p >= 1.0, "lp_norm: p must be >= 1");
    if (!std::isfinite(p)) return linf_norm(f);
    double s = 0.0;
    for (double x : f.v) s += std::pow(std::abs(x), p);
    s *= f.grid.dx() * f.grid.dx();
    return std::pow(s, 1.0 / p);
}

double linf_norm(const PhysField2D& f) {
    double m = 0.0;
    for (double x : f.v) m = std::max(m, std::abs(x));
    return m;
}

SpectralField2D random_band_field(const TorusGrid& g, std::uint64_t seed,
                                  double kmin, double kmax, double amp) {
    require(kmin >= 1.0 && kmax >= kmin, "random_band_field: need 1 <= kmin <= kmax");
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    SpectralField2D f(g);
    const std::uint32_t n = g.n;
    // Fill a conjugate-symmetric half-space in a fixed traversal order.
    for (std::uint32_t i = 0; i < n; ++i) {
        const int m1 = g.freq(i);
        for (std::uint32_t j = 0; j < n; ++j) {
            const int m2 = g.freq(j);
            const double mag = std::sqrt(double(m1) * m1 + double(m2) * m2);
            if (mag < kmin || mag > kmax) continue;
            if (m1 < 0 || (m1 == 0 && m2 < 0)) continue; // conjugate partner fills these
            if (m1 == -static_cast<int>(n) / 2 || m2 == -static_cast<int>(n) / 2) continue;
            const cplx v(gauss(rng), gauss(rng));
            f.mode(m1, m2) = v;
            f.mode(-m1, -m2) = std::conj(v);
        }
    }
    f.zero_mean();
    PhysField2D p = inverse_transform(f);
    const double mx = linf_norm(p);
    if (mx > 0.0) {
        const double s = amp / mx;
        for (auto& z : f.c) z *= s;
    }
    return f;
}

} // namespace qghs
