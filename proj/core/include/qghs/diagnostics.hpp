#pragma once

#include "qghs/dynamics.hpp"

#include <span>
#include <string>
#include <utility>
#include <vector>

namespace qghs {

// Boundary Hamiltonian l^2 sum |k|^{-1} |theta_hat|^2. Equals the Dirichlet
// energy of the harmonic extension over the whole half space.
double hamiltonian(const SpectralField2D& theta);

// Dirichlet energy of the flow potential over the half space: the exact
// harmonic-part value (= hamiltonian) plus trapezoid-quadrature corrections
// for the source part and the radiation tails. For omega == 0 this returns
// hamiltonian(theta) identically.
double energy(const SimState& s);

// Flow potential at the slab levels (negative harmonic part plus source
// part); materializes the analytic extension for pure boundary states.
LayeredSpectral3D flow_levels(const SimState& s);

// Mollified energy-flux functional at smoothing width eps:
//   -2 sum_iz w_iz int < (u tensor G)^eps - u^eps tensor G^eps ,
//                        grad_h G^eps > dx,   G = grad of the flow potential.
// Scales like eps^2 for smooth states.
double onsager_flux(const SimState& s, double eps);

struct DiagOptions {
    std::vector<double> theta_ps = {2.0, 3.0, 4.0};
    std::vector<double> omega_qs = {2.0};
    std::vector<double> besov_alphas = {0.5};
    double flux_width = 0.0; // physical mollification width; 0 disables flux
};

struct DiagnosticsRecord {
    double t = 0.0;
    double energy = 0.0;
    double hamiltonian = 0.0;
    double flux = 0.0;
    bool has_flux = false;
    std::vector<std::pair<double, double>> theta_lp;  // (p, ||theta||_p)
    std::vector<std::pair<double, double>> omega_lq;  // (q, slab L^q)
    std::vector<std::pair<double, double>> besov;     // (alpha, boundary velocity norm)
};

DiagnosticsRecord compute_diagnostics(const SimState& s, const DiagOptions& opts);

struct ConservationReport {
    double energy_drift = 0.0;      // max_t |E(t) - E(0)| / max(|E(0)|, floor)
    double hamiltonian_drift = 0.0;
    double max_lp_growth = 0.0;     // max over p, t of the relative increase
    double max_besov = 0.0;
};

// Needs at least two records; records must share the exponent sets.
ConservationReport conservation_monitor(std::span<const DiagnosticsRecord> records);

// Space-time test functions phi = T(t) Z(z) X(x):
//   T(t) = (1 - (t/t_end)^2)^3          T(0) = 1, two derivatives vanish at t_end
//   Z interior = [z(H-z)]^3 / (H/2)^6   vanishing at both ends
//   Z closure  = (1 - z/H)^3            full closure: nonzero trace at z = 0
//   surface kind carries no Z factor.
// X is a seeded band-limited bump with exact spectral derivatives.
struct TestFunctionSpec {
    enum class Kind { interior, closure, surface };
    Kind kind = Kind::closure;
    std::uint64_t seed = 1;
    int kmin = 1, kmax = 3;
};

class TestFunction {
public:
    TestFunction(const TestFunctionSpec& spec, const SlabGrid& slab, double t_end);

    TestFunctionSpec::Kind kind;
    std::string label;
    double t_end, height;

    double T(double t) const;
    double Tp(double t) const;
    double Z(double z) const;
    double Zp(double z) const;

    // Horizontal factor and derivatives, spectral and collocation forms.
    SpectralField2D X, dX1, dX2, dX11, dX12, dX22;
    PhysField2D Xp, dX1p, dX2p, dX11p, dX12p, dX22p;
};

struct ResidualOptions {
    std::size_t gl_nodes = 32;   // vertical Gauss-Legendre order for volume terms
    double eps_diss = 0.0;
    ForcingSpec forcing{};
};

// Normalized weak residuals of one test function over a sampled trajectory:
//   res_grad      gradient-form (closed) formulation
//   res_interior  interior transport formulation
//   res_boundary  boundary transport formulation
//   res_boundary_comm  boundary formulation with the advection term written
//                      through the Calderon commutator
// combined_* assemble the interior/boundary pairs into the quantity the
// gradient form must reproduce; pair_* are the pairwise deviations between
// the three equivalent formulations, all scaled by the shared normalizer.
struct ResidualRow {
    std::string label;
    double res_grad = 0.0;
    double res_interior = 0.0;
    double res_boundary = 0.0;
    double res_boundary_comm = 0.0;
    double combined_transport = 0.0;
    double combined_commutator = 0.0;
    double pair_grad_transport = 0.0;
    double pair_grad_commutator = 0.0;
    double pair_transport_commutator = 0.0;
    double normalizer = 0.0;
};

struct EquivalenceReport {
    std::vector<ResidualRow> rows;
    double max_pairwise() const;
    double max_residual() const; // over res_grad / combined forms
};

// Streaming evaluator: feed snapshots in time order, then finalize. Keeps
// only scalar kernel samples per snapshot, so trajectories never need to be
// held in memory.
class ResidualEvaluator {
public:
    ResidualEvaluator(std::vector<TestFunction> fns, ResidualOptions opts);

    void add_snapshot(const SimState& s);
    EquivalenceReport finalize() const;

    const std::vector<TestFunction>& functions() const { return fns_; }

private:
    struct Sample {
        double t = 0.0;
        double k_grad = 0.0, k_vadv = 0.0, k_vforce = 0.0;
        double k_iw = 0.0, k_iadv = 0.0, k_iforce = 0.0;
        double k_bw = 0.0, k_badv = 0.0, k_bcadv = 0.0, k_bforce = 0.0;
    };
    std::vector<TestFunction> fns_;
    ResidualOptions opts_;
    std::vector<double> gl_z_, gl_w_; // nodes and weights mapped to [0, H]
    bool gl_ready_ = false;
    std::vector<std::vector<Sample>> samples_; // per function
    void prepare_nodes(const SlabGrid& slab);
};

// Convenience wrapper over an in-memory trajectory.
EquivalenceReport evaluate_residuals(std::span<const SimState> trajectory,
                                     const std::vector<TestFunctionSpec>& specs,
                                     const ResidualOptions& opts);

// Gauss-Legendre nodes and weights on [0, 1], ascending nodes.
void gauss_legendre(std::size_t n, std::vector<double>& nodes, std::vector<double>& weights);

} // namespace qghs
