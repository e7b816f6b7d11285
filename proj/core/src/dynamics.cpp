#include "qghs/dynamics.hpp"

#include "qghs/errors.hpp"
#include "qghs/harmonic.hpp"
#include "qghs/parallel.hpp"
#include "qghs/rng.hpp"
#include "qghs/spectral_ops.hpp"
#include "qghs/transform.hpp"

#include <algorithm>
#include <cmath>

namespace qghs {

SimState::SimState(SpectralField2D th, LayeredSpectral3D om, double time)
    : t(time), theta(std::move(th)), omega(std::move(om)) {
    require(std::isfinite(t), "SimState: non-finite time");
    require(omega.slab.torus == theta.grid, "SimState: omega and theta grids differ");
    require(omega.layer.empty() || omega.layer.size() == omega.slab.nz,
            "SimState: omega must hold zero or nz layers");
    for (const auto& lay : omega.layer)
        require(lay.grid == theta.grid, "SimState: omega layer grid mismatch");
}

const EllipticSplit& SimState::split() const {
    require(!omega_zero(), "SimState::split: omega layers not materialized");
    if (!split_) split_ = std::make_shared<const EllipticSplit>(elliptic_split(theta, omega));
    return *split_;
}

SpectralField2D forcing_surface(const ForcingSpec& f, const TorusGrid& grid) {
    if (!f.surface_active()) return SpectralField2D(grid);
    return cosine_mode(grid, f.m1, f.m2, f.amp);
}

SpectralField2D forcing_interior_layer(const ForcingSpec& f, const TorusGrid& grid, double z) {
    if (!f.interior_active()) return SpectralField2D(grid);
    require(f.zw > 0.0, "forcing_interior_layer: zw must be positive");
    double s = (z - f.z0) / f.zw;
    return cosine_mode(grid, f.m1, f.m2, f.amp * std::exp(-s * s));
}

namespace {

LayeredSpectral3D empty_layered(const SlabGrid& s) {
    LayeredSpectral3D out;
    out.slab = s;
    return out;
}

// Boundary velocity from the decomposition trace: riesz_perp(theta) plus the
// perp-gradient of the Psi_2 boundary layer (absent for pure SQG states).
std::array<SpectralField2D, 2> boundary_velocity(const SimState& s) {
    std::array<SpectralField2D, 2> u0 = riesz_perp(s.theta);
    if (!s.omega_zero()) {
        const SpectralField2D& p20 = s.split().psi2.layer[0];
        axpy(u0[0], -1.0, deriv(p20, 2));
        axpy(u0[1], 1.0, deriv(p20, 1));
    }
    return u0;
}

std::array<SpectralField2D, 2> perp_gradient(const SpectralField2D& g) {
    return {scaled(deriv(g, 2), -1.0), deriv(g, 1)};
}

double linf_pair(const PhysField2D& a, const PhysField2D& b) {
    double m = 0.0;
    for (double v : a.v) m = std::max(m, std::fabs(v));
    for (double v : b.v) m = std::max(m, std::fabs(v));
    return m;
}

// -(u . grad f) in spectral form; updates speed with the pointwise max of u.
SpectralField2D advect(const std::array<SpectralField2D, 2>& u, const SpectralField2D& f,
                       bool dealias_product, double& speed) {
    const TorusGrid& g = f.grid;
    PhysField2D u1 = inverse_transform(u[0]);
    PhysField2D u2 = inverse_transform(u[1]);
    PhysField2D f1 = inverse_transform(deriv(f, 1));
    PhysField2D f2 = inverse_transform(deriv(f, 2));
    speed = std::max(speed, linf_pair(u1, u2));
    PhysField2D prod(g);
    for (std::size_t i = 0; i < prod.v.size(); ++i)
        prod.v[i] = u1.v[i] * f1.v[i] + u2.v[i] * f2.v[i];
    SpectralField2D out = forward_transform(prod);
    scale(out, -1.0);
    if (dealias_product) dealias_inplace(out);
    return out;
}

} // namespace

VelocityField velocity_from_state(const SimState& s, bool with_interior) {
    VelocityField v;
    v.u0 = boundary_velocity(s);
    if (!with_interior) return v;
    const SlabGrid& slab = s.slab();
    v.u.resize(slab.nz, {SpectralField2D(s.grid()), SpectralField2D(s.grid())});
    if (s.omega_zero()) {
        // Flow potential is -Psi_1, so each level is the Poisson-damped
        // boundary velocity.
        for (std::size_t iz = 0; iz < slab.nz; ++iz) {
            v.u[iz][0] = poisson_extend(v.u0[0], slab.z(iz));
            v.u[iz][1] = poisson_extend(v.u0[1], slab.z(iz));
        }
        return v;
    }
    LayeredSpectral3D flow = s.split().flow_potential();
    parallel_for(slab.nz, [&](std::size_t iz) { v.u[iz] = perp_gradient(flow.layer[iz]); });
    return v;
}

double max_speed(const SimState& s) {
    bool interior = !s.omega_zero();
    VelocityField v = velocity_from_state(s, interior);
    double m = linf_pair(inverse_transform(v.u0[0]), inverse_transform(v.u0[1]));
    if (interior) {
        std::vector<double> level(v.u.size(), 0.0);
        parallel_for(v.u.size(), [&](std::size_t iz) {
            level[iz] = linf_pair(inverse_transform(v.u[iz][0]), inverse_transform(v.u[iz][1]));
        });
        for (double x : level) m = std::max(m, x);
    }
    return m;
}

Tendency rhs(const SimState& s, const ForcingSpec& f, const StepParams& p) {
    const TorusGrid& g = s.grid();
    const SlabGrid& slab = s.slab();
    Tendency out{SpectralField2D(g), empty_layered(slab), false, 0.0};

    std::array<SpectralField2D, 2> u0 = boundary_velocity(s);
    out.dtheta = advect(u0, s.theta, p.dealias, out.max_speed);
    if (f.surface_active()) {
        axpy(out.dtheta, 1.0, forcing_surface(f, g));
        if (p.dealias) dealias_inplace(out.dtheta);
    }

    bool interior_active = !s.omega_zero() || f.interior_active();
    if (!interior_active) return out;

    out.omega_active = true;
    out.domega.layer.assign(slab.nz, SpectralField2D(g));
    if (s.omega_zero()) {
        // Transport of an identically zero field vanishes; only the interior
        // forcing enters.
        for (std::size_t iz = 0; iz < slab.nz; ++iz)
            out.domega.layer[iz] = forcing_interior_layer(f, g, slab.z(iz));
        return out;
    }

    LayeredSpectral3D flow = s.split().flow_potential();
    std::vector<double> level_speed(slab.nz, 0.0);
    parallel_for(slab.nz, [&](std::size_t iz) {
        std::array<SpectralField2D, 2> u = perp_gradient(flow.layer[iz]);
        SpectralField2D dom = advect(u, s.omega.layer[iz], p.dealias, level_speed[iz]);
        if (f.interior_active()) {
            axpy(dom, 1.0, forcing_interior_layer(f, g, slab.z(iz)));
            if (p.dealias) dealias_inplace(dom);
        }
        out.domega.layer[iz] = std::move(dom);
    });
    for (double x : level_speed) out.max_speed = std::max(out.max_speed, x);
    return out;
}

namespace {

// Exact boundary-dissipation semigroup exp(-eps |k| tau).
SpectralField2D decay(const SpectralField2D& f, double eps, double tau) {
    if (eps == 0.0 || tau == 0.0) return f;
    SpectralField2D out = f;
    const TorusGrid& g = f.grid;
    for (std::uint32_t i = 0; i < g.n; ++i) {
        double k1 = g.k1(i);
        for (std::uint32_t j = 0; j < g.n; ++j) {
            double kk = std::hypot(k1, g.k2(j));
            out.at(i, j) *= std::exp(-eps * kk * tau);
        }
    }
    return out;
}

LayeredSpectral3D materialized(const LayeredSpectral3D& om) {
    if (!om.layer.empty()) return om;
    return LayeredSpectral3D(om.slab);
}

// base + tau * tendency (tendency may be inactive).
LayeredSpectral3D advance_omega(const LayeredSpectral3D& base, const Tendency& k, double tau) {
    if (!k.omega_active) return base;
    LayeredSpectral3D out = materialized(base);
    for (std::size_t iz = 0; iz < out.layer.size(); ++iz)
        axpy(out.layer[iz], tau, k.domega.layer[iz]);
    return out;
}

} // namespace

SimState step_rk4(const SimState& s, const StepParams& p, const ForcingSpec& f) {
    require(std::isfinite(p.dt) && p.dt > 0.0, "step_rk4: dt must be positive");
    const double h = p.dt;
    const double eps = p.eps_diss;
    require(std::isfinite(eps) && eps >= 0.0, "step_rk4: eps_diss must be nonnegative");

    Tendency a = rhs(s, f, p);
    if (p.check_cfl) {
        double limit = p.cfl * s.grid().dx() / std::max(a.max_speed, 1e-12);
        if (h > limit * (1.0 + 1e-9))
            throw CflViolation("step_rk4: dt " + std::to_string(h) +
                                   " exceeds the CFL bound " + std::to_string(limit),
                               limit);
    }

    SpectralField2D th_a = s.theta;
    axpy(th_a, 0.5 * h, a.dtheta);
    SimState sa(decay(th_a, eps, 0.5 * h), advance_omega(s.omega, a, 0.5 * h), s.t + 0.5 * h);
    Tendency b = rhs(sa, f, p);

    SpectralField2D th_b = decay(s.theta, eps, 0.5 * h);
    axpy(th_b, 0.5 * h, b.dtheta);
    SimState sb(std::move(th_b), advance_omega(s.omega, b, 0.5 * h), s.t + 0.5 * h);
    Tendency c = rhs(sb, f, p);

    SpectralField2D th_c = decay(s.theta, eps, h);
    axpy(th_c, h, decay(c.dtheta, eps, 0.5 * h));
    SimState sc(std::move(th_c), advance_omega(s.omega, c, h), s.t + h);
    Tendency d = rhs(sc, f, p);

    SpectralField2D th = decay(s.theta, eps, h);
    axpy(th, h / 6.0, decay(a.dtheta, eps, h));
    SpectralField2D bc = b.dtheta;
    axpy(bc, 1.0, c.dtheta);
    axpy(th, h / 3.0, decay(bc, eps, 0.5 * h));
    axpy(th, h / 6.0, d.dtheta);

    LayeredSpectral3D om = s.omega;
    if (a.omega_active || b.omega_active || c.omega_active || d.omega_active) {
        om = materialized(om);
        for (const Tendency* k : {&a, &d}) {
            if (!k->omega_active) continue;
            for (std::size_t iz = 0; iz < om.layer.size(); ++iz)
                axpy(om.layer[iz], h / 6.0, k->domega.layer[iz]);
        }
        for (const Tendency* k : {&b, &c}) {
            if (!k->omega_active) continue;
            for (std::size_t iz = 0; iz < om.layer.size(); ++iz)
                axpy(om.layer[iz], h / 3.0, k->domega.layer[iz]);
        }
    }
    return SimState(std::move(th), std::move(om), s.t + h);
}

double cfl_dt(const SimState& s, const StepParams& p) {
    require(p.cfl > 0.0 && p.dt_cap > 0.0, "cfl_dt: cfl and dt_cap must be positive");
    double dt = p.cfl * s.grid().dx() / std::max(max_speed(s), 1e-12);
    return std::min(dt, p.dt_cap);
}

LayeredSpectral3D solve_forcing_potential(const SpectralField2D& f_nu_eff,
                                          const LayeredSpectral3D& f_L) {
    return elliptic_split(f_nu_eff, f_L).total();
}

namespace {

// Coefficient-sum gauge: an upper bound for the sup norm, cheap to track.
double sup_gauge(const SimState& s) {
    double b = 0.0;
    for (const auto& v : s.theta.c) b += std::abs(v);
    double worst = 0.0;
    for (const auto& lay : s.omega.layer) {
        double bl = 0.0;
        for (const auto& v : lay.c) bl += std::abs(v);
        worst = std::max(worst, bl);
    }
    return b + worst;
}

bool all_zero(const LayeredSpectral3D& om) {
    for (const auto& lay : om.layer)
        for (const auto& v : lay.c)
            if (v != cplx(0.0, 0.0)) return false;
    return true;
}

} // namespace

RunResult run(SimState s0, const StepParams& p, const ForcingSpec& f, double t_final,
              std::uint64_t snapshot_every, const SnapshotSink& sink) {
    require(std::isfinite(t_final) && t_final > 0.0, "run: t_final must be positive");

    SimState s = std::move(s0);
    if (p.dealias) {
        dealias_inplace(s.theta);
        for (auto& lay : s.omega.layer) dealias_inplace(lay);
        s.invalidate();
    }
    if (!s.omega.layer.empty() && all_zero(s.omega)) {
        s.omega.layer.clear();
        s.invalidate();
    }

    StepParams pp = p;
    std::uint64_t steps = 0;
    if (p.dt > 0.0) {
        steps = static_cast<std::uint64_t>(std::llround(t_final / p.dt));
        require(steps >= 1 && std::fabs(static_cast<double>(steps) * p.dt - t_final) <=
                                  1e-9 * t_final,
                "run: dt must divide t_final");
        require(snapshot_every == 0 || steps % snapshot_every == 0,
                "run: snapshot cadence must divide the step count");
    } else {
        double dt0 = cfl_dt(s, p);
        steps = static_cast<std::uint64_t>(std::ceil(t_final / dt0 - 1e-12));
        steps = std::max<std::uint64_t>(steps, 1);
        if (snapshot_every > 0)
            steps = snapshot_every * ((steps + snapshot_every - 1) / snapshot_every);
        pp.dt = t_final / static_cast<double>(steps);
    }

    const double threshold = 1e3 * std::max(sup_gauge(s), 1.0);
    std::uint64_t done = 0;
    bool blew_up = false, cfl_fault = false;
    std::string fault;

    if (snapshot_every > 0 && sink) sink(s, 0);
    for (std::uint64_t k = 1; k <= steps; ++k) {
        try {
            s = step_rk4(s, pp, f);
        } catch (const CflViolation& e) {
            cfl_fault = true;
            fault = std::string(e.what()) + "; suggested dt " + std::to_string(e.suggested_dt);
            break;
        }
        done = k;
        double gauge = sup_gauge(s);
        if (!std::isfinite(gauge) || gauge > threshold) {
            blew_up = true;
            fault = "run: coefficient gauge " + std::to_string(gauge) +
                    " exceeded the blow-up threshold " + std::to_string(threshold);
            break;
        }
        if (snapshot_every > 0 && sink && k % snapshot_every == 0) sink(s, k);
    }

    return RunResult{std::move(s), pp.dt, steps, done, blew_up, cfl_fault, std::move(fault)};
}

} // namespace qghs
