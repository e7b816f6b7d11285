#pragma once

#include "qghs/elliptic.hpp"

#include <cstdint>
#include <functional>
#include <memory>
#include <stdexcept>
#include <string>

namespace qghs {

// Evolved state: boundary scalar theta = d_nu Psi and interior charge
// omega = Delta Psi, both spectral. An empty omega layer vector is the
// canonical representation of omega == 0; it keeps pure boundary dynamics
// from paying for interior storage. All mutating call sites either build a
// fresh SimState or call invalidate() so the cached decomposition can never
// go stale.
class SimState {
public:
    SimState(SpectralField2D theta, LayeredSpectral3D omega, double t);

    double t = 0.0;
    SpectralField2D theta;
    LayeredSpectral3D omega;

    bool omega_zero() const { return omega.layer.empty(); }
    const SlabGrid& slab() const { return omega.slab; }
    const TorusGrid& grid() const { return theta.grid; }

    // Elliptic decomposition of the current state, computed on first use.
    // Requires materialized omega layers; callers take the omega_zero()
    // shortcut themselves.
    const EllipticSplit& split() const;
    void invalidate() const { split_.reset(); }

private:
    mutable std::shared_ptr<const EllipticSplit> split_;
};

struct StepParams {
    double dt = 0.0;        // 0: choose from the CFL condition
    double eps_diss = 0.0;  // boundary dissipation strength
    double cfl = 0.4;
    double dt_cap = 0.1;    // upper bound for the adaptive choice
    bool dealias = true;    // truncate products to the |m| <= n/3 band
    bool check_cfl = true;  // reject steps that violate the CFL bound
};

// Steady forcing pair (f_L, f_nu). "none" produces exactly zero fields.
struct ForcingSpec {
    std::string kind = "none"; // none | surface_mode | interior_mode
    double amp = 0.0;
    int m1 = 1, m2 = 0;
    double z0 = 0.5, zw = 0.25; // interior_mode vertical Gaussian bump

    bool surface_active() const { return kind == "surface_mode" && amp != 0.0; }
    bool interior_active() const { return kind == "interior_mode" && amp != 0.0; }
};

SpectralField2D forcing_surface(const ForcingSpec& f, const TorusGrid& grid);
SpectralField2D forcing_interior_layer(const ForcingSpec& f, const TorusGrid& grid, double z);

struct VelocityField {
    std::array<SpectralField2D, 2> u0;              // boundary velocity
    std::vector<std::array<SpectralField2D, 2>> u;  // per level (may be absent)
};

// u = perp-gradient of (Psi_2 - Psi_1); the boundary components come out as
// riesz_perp(theta) + perp-gradient of the Psi_2 trace. The vertical
// component vanishes identically and is not stored. Interior levels are
// filled only when with_interior is set (for omega transport/diagnostics).
VelocityField velocity_from_state(const SimState& s, bool with_interior);

// Max pointwise speed over the boundary and, when omega is active, all
// levels. For pure boundary dynamics the interior speed never exceeds the
// boundary speed, so the boundary scan is exact.
double max_speed(const SimState& s);

struct Tendency {
    SpectralField2D dtheta;
    LayeredSpectral3D domega;       // empty when omega stays inactive
    bool omega_active = false;
    double max_speed = 0.0;         // largest advecting speed seen
};

// Transport + forcing tendencies. Boundary dissipation is NOT included:
// step_rk4 applies it exactly through an integrating factor.
Tendency rhs(const SimState& s, const ForcingSpec& f, const StepParams& p);

struct CflViolation : std::runtime_error {
    CflViolation(const std::string& msg, double suggested)
        : std::runtime_error(msg), suggested_dt(suggested) {}
    double suggested_dt;
};

// One explicit step of size p.dt. Fourth order: classical RK4 conjugated
// with the exact boundary-dissipation semigroup exp(-eps |k| tau), so a
// state with vanishing transport tendency decays exactly. Throws
// CflViolation when the advecting speed breaks the CFL bound mid-run.
SimState step_rk4(const SimState& s, const StepParams& p, const ForcingSpec& f);

// cfl * dx / max(speed, floor), capped by dt_cap.
double cfl_dt(const SimState& s, const StepParams& p);

// Potential F with Delta F = f_L and d_nu F = f_nu_eff (pass
// f_nu - eps * lambda theta for the dissipative system).
LayeredSpectral3D solve_forcing_potential(const SpectralField2D& f_nu_eff,
                                          const LayeredSpectral3D& f_L);

struct RunResult {
    SimState final_state;
    double dt = 0.0;
    std::uint64_t steps = 0;      // planned
    std::uint64_t steps_done = 0; // completed before any fault
    bool blew_up = false;
    bool cfl_fault = false;
    std::string fault;            // empty on a clean run
};

using SnapshotSink = std::function<void(const SimState&, std::uint64_t step)>;

// Integrates s0 to t_final with a fixed step chosen once: either p.dt
// (which must divide t_final) or T/ceil from the initial CFL bound, rounded
// so the snapshot cadence divides the step count. The sink fires at step 0,
// every snapshot_every steps, and after the final step (snapshot_every = 0
// disables it). A mid-run CFL violation or a blow-up of the coefficient
// bound halts integration; the partial state is still returned and flagged.
RunResult run(SimState s0, const StepParams& p, const ForcingSpec& f, double t_final,
              std::uint64_t snapshot_every, const SnapshotSink& sink = {});

} // namespace qghs
