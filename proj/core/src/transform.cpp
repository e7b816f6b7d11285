#include "qghs/transform.hpp"

#include <fftw3.h>

#include <cmath>
#include <map>
#include <mutex>

namespace qghs {
namespace {

// One forward and one backward c2c plan per grid size. Plans are created
// with FFTW_ESTIMATE (deterministic choice for a given FFTW build) and
// FFTW_UNALIGNED so they can execute on any heap buffer via the new-array
// interface.
struct PlanPair {
    fftw_plan fwd = nullptr;
    fftw_plan bwd = nullptr;
};

std::mutex plan_mutex;
std::map<std::uint32_t, PlanPair>& plan_cache() {
    static std::map<std::uint32_t, PlanPair> cache;
    return cache;
}

PlanPair plans_for(std::uint32_t n) {
    std::lock_guard<std::mutex> lock(plan_mutex);
    auto& cache = plan_cache();
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;

    std::vector<cplx> buf(std::size_t(n) * n);
    auto* p = reinterpret_cast<fftw_complex*>(buf.data());
    PlanPair pp;
    pp.fwd = fftw_plan_dft_2d(int(n), int(n), p, p, FFTW_FORWARD, FFTW_ESTIMATE | FFTW_UNALIGNED);
    pp.bwd = fftw_plan_dft_2d(int(n), int(n), p, p, FFTW_BACKWARD, FFTW_ESTIMATE | FFTW_UNALIGNED);
    check_runtime(pp.fwd && pp.bwd, "fftw plan creation failed");
    cache[n] = pp;
    return pp;
}

} // namespace

SpectralField2D forward_transform(const PhysField2D& f) {
    const std::uint32_t n = f.grid.n;
    SpectralField2D out(f.grid);
    for (std::size_t i = 0; i < f.v.size(); ++i) out.c[i] = cplx(f.v[i], 0.0);
    auto* p = reinterpret_cast<fftw_complex*>(out.c.data());
    fftw_execute_dft(plans_for(n).fwd, p, p);
    const double scale = 1.0 / (double(n) * double(n));
    for (auto& z : out.c) z *= scale;
    return out;
}

PhysField2D inverse_transform(const SpectralField2D& f, double hermitian_tol) {
    double maxc = 0.0;
    for (const auto& z : f.c) maxc = std::max(maxc, std::abs(z));
    const double defect = hermitian_defect(f);
    require(defect <= hermitian_tol * std::max(maxc, 1e-300),
            "inverse_transform: coefficients are not Hermitian-symmetric");

    std::vector<cplx> buf = f.c;
    auto* p = reinterpret_cast<fftw_complex*>(buf.data());
    fftw_execute_dft(plans_for(f.grid.n).bwd, p, p);
    PhysField2D out(f.grid);
    for (std::size_t i = 0; i < buf.size(); ++i) out.v[i] = buf[i].real();
    return out;
}

double hermitian_defect(const SpectralField2D& f) {
    const std::uint32_t n = f.grid.n;
    double worst = 0.0;
    for (std::uint32_t i = 0; i < n; ++i) {
        const std::uint32_t in = (n - i) % n;
        for (std::uint32_t j = 0; j < n; ++j) {
            const std::uint32_t jn = (n - j) % n;
            const cplx d = f.at(in, jn) - std::conj(f.at(i, j));
            worst = std::max(worst, std::abs(d));
        }
    }
    return worst;
}

double spectral_l2sq(const SpectralField2D& f) {
    double s = 0.0;
    for (const auto& z : f.c) s += std::norm(z);
    return f.grid.l * f.grid.l * s;
}

double grid_l2sq(const PhysField2D& f) {
    double s = 0.0;
    for (double x : f.v) s += x * x;
    return s * f.grid.dx() * f.grid.dx();
}

} // namespace qghs
