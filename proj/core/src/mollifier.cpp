#include "qghs/mollifier.hpp"

#include <cmath>

#include "qghs/transform.hpp"

namespace qghs {
namespace {

double bump(double rho) { // rho = |y|/eps
    const double s = 1.0 - rho * rho;
    return s > 0.0 ? std::exp(-1.0 / s) : 0.0;
}

} // namespace

Mollifier::Mollifier(const TorusGrid& g, double eps_) : eps(eps_), grid(g) {
    const double dx = g.dx();
    require(eps > 0.0 && eps < 0.25 * g.l, "Mollifier: need 0 < eps < l/4");
    require(eps >= 2.0 * dx, "Mollifier: width must span at least two cells");
    r = static_cast<int>(std::floor(eps / dx));
    if (r * dx >= eps) --r; // weights at |y| >= eps vanish anyway
    const int d = 2 * r + 1;
    w.assign(std::size_t(d) * d, 0.0);
    double sum = 0.0;
    for (int a = -r; a <= r; ++a) {
        for (int b = -r; b <= r; ++b) {
            const double rho = std::sqrt(double(a) * a + double(b) * b) * dx / eps;
            const double v = bump(rho);
            w[std::size_t(a + r) * d + (b + r)] = v;
            sum += v;
        }
    }
    check_runtime(sum > 0.0, "Mollifier: empty support");
    for (auto& x : w) x /= sum;
}

double Mollifier::transform_value(double k1, double k2) const {
    const double dx = grid.dx();
    double s = 0.0;
    for (int a = -r; a <= r; ++a)
        for (int b = -r; b <= r; ++b)
            s += weight(a, b) * std::cos(k1 * a * dx + k2 * b * dx);
    return s;
}

std::vector<double> Mollifier::transform_table() const {
    const std::uint32_t n = grid.n;
    const double dx = grid.dx();
    const int d = 2 * r + 1;
    std::vector<double> tab(grid.size());
    std::vector<double> row(d);
    // w is even in each offset, so the sin cross terms cancel and
    // sum_ab w cos(k1 a dx + k2 b dx) = sum_a cos(k1 a dx) row_a(k2).
    for (std::uint32_t j = 0; j < n; ++j) {
        const double k2v = grid.k2(j);
        for (int a = -r; a <= r; ++a) {
            double s = 0.0;
            for (int b = -r; b <= r; ++b) s += weight(a, b) * std::cos(k2v * b * dx);
            row[std::size_t(a + r)] = s;
        }
        for (std::uint32_t i = 0; i < n; ++i) {
            const double k1v = grid.k1(i);
            double s = 0.0;
            for (int a = -r; a <= r; ++a) s += row[std::size_t(a + r)] * std::cos(k1v * a * dx);
            tab[std::size_t(i) * n + j] = s;
        }
    }
    return tab;
}

PhysField2D mollify(const PhysField2D& f, const Mollifier& m) {
    require(f.grid == m.grid, "mollify: grid mismatch");
    const std::uint32_t n = f.grid.n;
    const int r = m.r;
    PhysField2D out(f.grid);
    const auto wrap = [n](int i) {
        int v = i % static_cast<int>(n);
        return static_cast<std::uint32_t>(v < 0 ? v + static_cast<int>(n) : v);
    };
    for (std::uint32_t i = 0; i < n; ++i) {
        for (std::uint32_t j = 0; j < n; ++j) {
            double acc = 0.0;
            for (int a = -r; a <= r; ++a) {
                const std::uint32_t ia = wrap(int(i) - a);
                for (int b = -r; b <= r; ++b)
                    acc += m.weight(a, b) * f.at(ia, wrap(int(j) - b));
            }
            out.at(i, j) = acc;
        }
    }
    return out;
}

SpectralField2D mollify(const SpectralField2D& f, const Mollifier& m) {
    return forward_transform(mollify(inverse_transform(f), m));
}

Mollifier1D::Mollifier1D(double dz, double eps_) : eps(eps_) {
    require(eps > 0.0, "Mollifier1D: width must be positive");
    r = static_cast<int>(std::floor(eps / dz));
    if (r * dz >= eps) --r;
    if (r < 0) r = 0;
    w.assign(std::size_t(2 * r + 1), 0.0);
    double sum = 0.0;
    for (int a = -r; a <= r; ++a) {
        const double v = bump(std::abs(a) * dz / eps);
        w[std::size_t(a + r)] = v;
        sum += v;
    }
    check_runtime(sum > 0.0, "Mollifier1D: empty support");
    for (auto& x : w) x /= sum;
}

std::vector<double> mollify_profile_mirror(const std::vector<double>& prof, const Mollifier1D& m) {
    const int nz = static_cast<int>(prof.size());
    require(nz >= 2, "mollify_profile_mirror: need at least two levels");
    const int period = 2 * (nz - 1); // even extension index period
    const auto sample = [&](int i) {
        int v = i % period;
        if (v < 0) v += period;
        return prof[static_cast<std::size_t>(v < nz ? v : period - v)];
    };
    std::vector<double> out(prof.size());
    for (int i = 0; i < nz; ++i) {
        double acc = 0.0;
        for (int a = -m.r; a <= m.r; ++a) acc += m.weight(a) * sample(i - a);
        out[static_cast<std::size_t>(i)] = acc;
    }
    return out;
}

} // namespace qghs
