#include "qghs/elliptic.hpp"

#include <cmath>

namespace qghs {
namespace {

// Thomas solve for a symmetric positive definite tridiagonal with real
// coefficients and complex right-hand side. diag/off are overwritten-free.
std::vector<cplx> thomas_spd(const std::vector<double>& diag, const std::vector<double>& off,
                             std::vector<cplx> rhs) {
    const std::size_t n = diag.size();
    std::vector<double> d(n);
    std::vector<double> e(n > 0 ? n - 1 : 0);
    d[0] = diag[0];
    for (std::size_t i = 0; i + 1 < n; ++i) {
        check_runtime(d[i] > 0.0, "vertical solve: matrix is not positive definite");
        e[i] = off[i] / d[i];
        d[i + 1] = diag[i + 1] - off[i] * e[i];
    }
    check_runtime(d[n - 1] > 0.0, "vertical solve: matrix is not positive definite");
    for (std::size_t i = 1; i < n; ++i) rhs[i] -= e[i - 1] * rhs[i - 1];
    for (std::size_t i = 0; i < n; ++i) rhs[i] /= d[i];
    for (std::size_t i = n - 1; i > 0; --i) rhs[i - 1] -= e[i - 1] * rhs[i];
    return rhs;
}

double trapz_weight(std::uint32_t i, std::uint32_t nz, double dz) {
    return (i == 0 || i == nz - 1) ? 0.5 * dz : dz;
}

} // namespace

void dz_apply(const std::vector<cplx>& f, std::vector<cplx>& out, double dz) {
    const std::size_t nz = f.size();
    require(nz >= 3, "dz_apply: need at least three levels");
    out.resize(nz);
    const double s = 1.0 / (2.0 * dz);
    out[0] = (-3.0 * f[0] + 4.0 * f[1] - f[2]) * s;
    for (std::size_t i = 1; i + 1 < nz; ++i) out[i] = (f[i + 1] - f[i - 1]) * s;
    out[nz - 1] = (3.0 * f[nz - 1] - 4.0 * f[nz - 2] + f[nz - 3]) * s;
}

std::vector<cplx> solve_vertical_mode(const std::vector<cplx>& omega, double kappa, double dz,
                                      cplx gbot, const cplx* top_flux) {
    const std::size_t nz = omega.size();
    require(nz >= 3, "solve_vertical_mode: need at least three levels");
    require(kappa >= 0.0 && dz > 0.0, "solve_vertical_mode: bad kappa or dz");

    // Lumped P1 form of (-psi'' + kappa^2 psi) = -omega:
    //   sum (psi_{i+1}-psi_i)(phi_{i+1}-phi_i)/dz + kappa^2 sum w_i psi_i phi_i
    //     = -sum w_i omega_i phi_i - gbot phi_0 + gtop phi_{nz-1}
    // with the radiation closure folding gtop = -kappa psi(H) into the matrix.
    std::vector<double> diag(nz), off(nz - 1, -1.0 / dz);
    std::vector<cplx> rhs(nz);
    const std::uint32_t unz = static_cast<std::uint32_t>(nz);
    for (std::size_t i = 0; i < nz; ++i) {
        const double w = trapz_weight(static_cast<std::uint32_t>(i), unz, dz);
        diag[i] = kappa * kappa * w + ((i == 0 || i == nz - 1) ? 1.0 : 2.0) / dz;
        rhs[i] = -w * omega[i];
    }
    rhs[0] -= gbot;

    if (top_flux == nullptr) {
        require(kappa > 0.0, "solve_vertical_mode: radiation closure needs kappa > 0");
        diag[nz - 1] += kappa;
        return thomas_spd(diag, off, std::move(rhs));
    }

    rhs[nz - 1] += *top_flux;
    if (kappa > 0.0) return thomas_spd(diag, off, std::move(rhs));

    // kappa == 0, both ends Neumann: singular with constant nullspace. The
    // caller guarantees compatibility; pin psi_{nz-1} = 0, solve the leading
    // block, then remove the trapezoid mean.
    std::vector<double> d2(diag.begin(), diag.end() - 1);
    std::vector<double> o2(off.begin(), off.end() - 1);
    std::vector<cplx> r2(rhs.begin(), rhs.end() - 1);
    std::vector<cplx> psi = thomas_spd(d2, o2, std::move(r2));
    psi.push_back(cplx(0.0, 0.0));
    cplx meansum(0.0, 0.0);
    double wsum = 0.0;
    for (std::size_t i = 0; i < nz; ++i) {
        const double w = trapz_weight(static_cast<std::uint32_t>(i), unz, dz);
        meansum += w * psi[i];
        wsum += w;
    }
    const cplx mean = meansum / wsum;
    for (auto& v : psi) v -= mean;
    return psi;
}

LayeredSpectral3D solve_psi1(const SpectralField2D& theta, const SlabGrid& slab) {
    require(theta.grid == slab.torus, "solve_psi1: grid mismatch");
    LayeredSpectral3D psi(slab);
    const std::uint32_t n = theta.grid.n;
    for (std::uint32_t iz = 0; iz < slab.nz; ++iz) {
        const double z = slab.z(iz);
        SpectralField2D& lay = psi.layer[iz];
        for (std::uint32_t i = 0; i < n; ++i) {
            const double k1 = theta.grid.k1(i);
            for (std::uint32_t j = 0; j < n; ++j) {
                if (i == 0 && j == 0) continue;
                const double mag = std::hypot(k1, theta.grid.k2(j));
                lay.at(i, j) = theta.at(i, j) * (std::exp(-z * mag) / mag);
            }
        }
    }
    return psi;
}

LayeredSpectral3D solve_psi2(const LayeredSpectral3D& omega) {
    const SlabGrid& slab = omega.slab;
    const std::uint32_t n = slab.torus.n;
    const std::uint32_t nz = slab.nz;
    const double dz = slab.dz();
    LayeredSpectral3D psi(slab);

    std::vector<cplx> prof(nz);
    for (std::uint32_t i = 0; i < n; ++i) {
        const double k1 = slab.torus.k1(i);
        for (std::uint32_t j = 0; j < n; ++j) {
            const double kappa = std::hypot(k1, slab.torus.k2(j));
            for (std::uint32_t iz = 0; iz < nz; ++iz) prof[iz] = omega.layer[iz].at(i, j);

            std::vector<cplx> sol;
            if (i == 0 && j == 0) {
                cplx flux(0.0, 0.0);
                for (std::uint32_t iz = 0; iz < nz; ++iz)
                    flux += trapz_weight(iz, nz, dz) * prof[iz];
                sol = solve_vertical_mode(prof, 0.0, dz, cplx(0.0, 0.0), &flux);
            } else {
                sol = solve_vertical_mode(prof, kappa, dz, cplx(0.0, 0.0), nullptr);
            }
            for (std::uint32_t iz = 0; iz < nz; ++iz) psi.layer[iz].at(i, j) = sol[iz];
        }
    }
    return psi;
}

LayeredSpectral3D EllipticSplit::total() const {
    LayeredSpectral3D out = psi1;
    for (std::uint32_t iz = 0; iz < out.nz(); ++iz)
        for (std::size_t m = 0; m < out.layer[iz].c.size(); ++m)
            out.layer[iz].c[m] += psi2.layer[iz].c[m];
    return out;
}

LayeredSpectral3D EllipticSplit::flow_potential() const {
    LayeredSpectral3D out = psi2;
    for (std::uint32_t iz = 0; iz < out.nz(); ++iz)
        for (std::size_t m = 0; m < out.layer[iz].c.size(); ++m)
            out.layer[iz].c[m] -= psi1.layer[iz].c[m];
    return out;
}

EllipticSplit elliptic_split(const SpectralField2D& theta, const LayeredSpectral3D& omega) {
    require(theta.grid == omega.slab.torus, "elliptic_split: grid mismatch");
    EllipticSplit s;
    s.psi1 = solve_psi1(theta, omega.slab);
    s.psi2 = solve_psi2(omega);
    return s;
}

LayeredVec3<SpectralField2D> gradient(const LayeredSpectral3D& psi) {
    const SlabGrid& slab = psi.slab;
    const std::uint32_t nz = slab.nz;
    LayeredVec3<SpectralField2D> g(slab);

    for (std::uint32_t iz = 0; iz < nz; ++iz) {
        g.comp[1].layer[iz] = deriv(psi.layer[iz], 1);
        g.comp[2].layer[iz] = deriv(psi.layer[iz], 2);
    }
    const std::uint32_t n = slab.torus.n;
    std::vector<cplx> prof(nz), dprof(nz);
    for (std::uint32_t i = 0; i < n; ++i) {
        for (std::uint32_t j = 0; j < n; ++j) {
            for (std::uint32_t iz = 0; iz < nz; ++iz) prof[iz] = psi.layer[iz].at(i, j);
            dz_apply(prof, dprof, slab.dz());
            for (std::uint32_t iz = 0; iz < nz; ++iz) g.comp[0].layer[iz].at(i, j) = dprof[iz];
        }
    }
    return g;
}

SpectralField2D boundary_trace(const LayeredSpectral3D& f) {
    require(!f.layer.empty(), "boundary_trace: empty field");
    return f.layer[0];
}

namespace {

// Symmetric pentadiagonal SPD factorization/solve (bandwidth 2), used by
// the variational Hodge solve. band[b][i] holds A_{i, i+b}.
struct Penta {
    std::vector<double> d0, d1, d2;

    void ldlt() {
        const std::size_t n = d0.size();
        for (std::size_t i = 0; i < n; ++i) {
            double v = d0[i];
            if (i >= 1) v -= d1[i - 1] * d1[i - 1] * d0[i - 1];
            if (i >= 2) v -= d2[i - 2] * d2[i - 2] * d0[i - 2];
            check_runtime(v > 0.0, "hodge solve: matrix is not positive definite");
            d0[i] = v;
            if (i + 1 < n) {
                double u = d1[i];
                if (i >= 1) u -= d1[i - 1] * d2[i - 1] * d0[i - 1];
                d1[i] = u / v;
            }
            if (i + 2 < n) d2[i] /= v;
        }
    }

    // Solve with the factored matrix; rhs overwritten with the solution.
    void solve(std::vector<cplx>& rhs) const {
        const std::size_t n = d0.size();
        for (std::size_t i = 0; i < n; ++i) {
            if (i >= 1) rhs[i] -= d1[i - 1] * rhs[i - 1];
            if (i >= 2) rhs[i] -= d2[i - 2] * rhs[i - 2];
        }
        for (std::size_t i = 0; i < n; ++i) rhs[i] /= d0[i];
        for (std::size_t i = n; i-- > 0;) {
            if (i + 1 < n) rhs[i] -= d1[i] * rhs[i + 1];
            if (i + 2 < n) rhs[i] -= d2[i] * rhs[i + 2];
        }
    }
};

// Rows of the vertical derivative: row i has entries (col, val/dz-scale).
void dz_row(std::uint32_t i, std::uint32_t nz, double dz, std::uint32_t* cols, double* vals) {
    const double s = 1.0 / (2.0 * dz);
    if (i == 0) {
        cols[0] = 0; cols[1] = 1; cols[2] = 2;
        vals[0] = -3.0 * s; vals[1] = 4.0 * s; vals[2] = -s;
    } else if (i == nz - 1) {
        cols[0] = nz - 3; cols[1] = nz - 2; cols[2] = nz - 1;
        vals[0] = s; vals[1] = -4.0 * s; vals[2] = 3.0 * s;
    } else {
        cols[0] = i - 1; cols[1] = i; cols[2] = i + 1;
        vals[0] = -s; vals[1] = 0.0; vals[2] = s;
    }
}

} // namespace

LayeredVec3<SpectralField2D> hodge_project(const LayeredVec3<SpectralField2D>& v) {
    const SlabGrid& slab = v.comp[0].slab;
    require(v.comp[1].slab == slab && v.comp[2].slab == slab, "hodge_project: slab mismatch");
    const std::uint32_t n = slab.torus.n;
    const std::uint32_t nz = slab.nz;
    const double dz = slab.dz();

    LayeredSpectral3D w(slab);
    std::uint32_t cols[3];
    double vals[3];

    for (std::uint32_t i = 0; i < n; ++i) {
        if (i == n / 2) continue; // Nyquist annihilated
        const double k1 = slab.torus.k1(i);
        for (std::uint32_t j = 0; j < n; ++j) {
            if (j == n / 2) continue;
            const double ksq = k1 * k1 + slab.torus.k2(j) * slab.torus.k2(j);

            Penta A;
            A.d0.assign(nz, 0.0);
            A.d1.assign(nz - 1, 0.0);
            A.d2.assign(nz - 2, 0.0);
            std::vector<cplx> b(nz, cplx(0.0, 0.0));

            for (std::uint32_t row = 0; row < nz; ++row) {
                const double wq = trapz_weight(row, nz, dz);
                dz_row(row, nz, dz, cols, vals);
                for (int a = 0; a < 3; ++a) {
                    for (int c = a; c < 3; ++c) {
                        const std::uint32_t ca = cols[a], cb = cols[c];
                        const double contrib = wq * vals[a] * vals[c];
                        const std::uint32_t lo = std::min(ca, cb), hi = std::max(ca, cb);
                        if (hi - lo == 0) A.d0[lo] += (a == c) ? contrib : 2.0 * contrib;
                        else if (hi - lo == 1) A.d1[lo] += contrib;
                        else A.d2[lo] += contrib;
                    }
                    b[cols[a]] += wq * vals[a] * v.comp[0].layer[row].at(i, j);
                }
                A.d0[row] += ksq * wq;
                const cplx hterm = cplx(0.0, -k1) * v.comp[1].layer[row].at(i, j) +
                                   cplx(0.0, -slab.torus.k2(j)) * v.comp[2].layer[row].at(i, j);
                b[row] += wq * hterm;
            }

            std::vector<cplx> sol;
            if (ksq == 0.0) {
                // constants in the kernel; pin the last level then recentre
                Penta A2;
                A2.d0.assign(A.d0.begin(), A.d0.end() - 1);
                A2.d1.assign(A.d1.begin(), A.d1.end() - 1);
                A2.d2.assign(A.d2.begin(), A.d2.end() - 1);
                std::vector<cplx> b2(b.begin(), b.end() - 1);
                A2.ldlt();
                A2.solve(b2);
                sol = std::move(b2);
                sol.push_back(cplx(0.0, 0.0));
                cplx mean(0.0, 0.0);
                double wsum = 0.0;
                for (std::uint32_t iz = 0; iz < nz; ++iz) {
                    mean += trapz_weight(iz, nz, dz) * sol[iz];
                    wsum += trapz_weight(iz, nz, dz);
                }
                mean /= wsum;
                for (auto& x : sol) x -= mean;
            } else {
                A.ldlt();
                A.solve(b);
                sol = std::move(b);
            }
            for (std::uint32_t iz = 0; iz < nz; ++iz) w.layer[iz].at(i, j) = sol[iz];
        }
    }
    return gradient(w);
}

double sobolev_lift(double q) {
    require(q > 1.0 && q < 3.0, "sobolev_lift: q must lie in (1, 3)");
    return 3.0 * q / (3.0 - q);
}

double trace_exponent(double q) {
    require(q > 1.0 && q < 3.0, "trace_exponent: q must lie in (1, 3)");
    return 2.0 * q / (3.0 - q);
}

double neumann_lift(double p) {
    require(p > 1.0 && std::isfinite(p), "neumann_lift: p must lie in (1, inf)");
    return 1.5 * p;
}

double commutator_threshold(double q) {
    require(q > 1.0 && q <= 3.0, "commutator_threshold: q must lie in (1, 3]");
    return 2.0 * q / (3.0 * (q - 1.0));
}

double slab_lq_norm(const LayeredPhys3D& f, double q) {
    require(q >= 1.0, "slab_lq_norm: q must be >= 1");
    const double dA = f.slab.torus.dx() * f.slab.torus.dx();
    double s = 0.0;
    for (std::uint32_t iz = 0; iz < f.nz(); ++iz) {
        double layer = 0.0;
        for (double x : f.layer[iz].v) layer += std::pow(std::abs(x), q);
        s += f.slab.zweight(iz) * layer * dA;
    }
    return std::pow(s, 1.0 / q);
}

double slab_lq_norm(const LayeredSpectral3D& f, double q) {
    return slab_lq_norm(to_physical(f), q);
}

double slab_linf_norm(const LayeredPhys3D& f) {
    double m = 0.0;
    for (const auto& lay : f.layer)
        for (double x : lay.v) m = std::max(m, std::abs(x));
    return m;
}

LayeredPhys3D to_physical(const LayeredSpectral3D& f) {
    LayeredPhys3D out(f.slab);
    for (std::uint32_t iz = 0; iz < f.nz(); ++iz) out.layer[iz] = inverse_transform(f.layer[iz]);
    return out;
}

LayeredSpectral3D to_spectral(const LayeredPhys3D& f) {
    LayeredSpectral3D out(f.slab);
    for (std::uint32_t iz = 0; iz < f.nz(); ++iz) out.layer[iz] = forward_transform(f.layer[iz]);
    return out;
}

} // namespace qghs
