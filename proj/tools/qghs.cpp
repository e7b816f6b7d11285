#include "qghs/config.hpp"
#include "qghs/csv.hpp"
#include "qghs/mollifier.hpp"
#include "qghs/parallel.hpp"
#include "qghs/snapshot.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <numeric>
#include <random>
#include <sstream>

namespace fs = std::filesystem;
using namespace qghs;

namespace {

struct CliOverrides {
    std::uint64_t seed = 0;
    bool seed_set = false;
    unsigned threads = 0;
    bool fixed_order = false;
};

RunConfig effective_config(const std::string& path, const CliOverrides& o) {
    std::ifstream in(path, std::ios::binary);
    check_runtime(static_cast<bool>(in), "cannot open config file '" + path + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    std::string text = buf.str();
    if (o.seed_set) text += "\nseed = " + std::to_string(o.seed) + "\n";
    RunConfig cfg = parse_config(text);
    if (o.threads > 0) cfg.threads = o.threads;
    if (o.fixed_order) cfg.fixed_order = true;
    set_thread_count(cfg.fixed_order ? 1 : cfg.threads);
    return cfg;
}

std::string snap_name(std::uint64_t step) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "snap_%08llu.qghs", static_cast<unsigned long long>(step));
    return buf;
}

int cmd_run(const std::string& config_path, const std::string& out_dir, const CliOverrides& o) {
    RunConfig cfg = effective_config(config_path, o);
    fs::create_directories(out_dir);

    SimState s0 = initial_state(cfg);
    StepParams sp = step_params(cfg);
    DiagOptions dopt = diag_options(cfg);

    std::uint64_t snap = cfg.snapshot_every, diag = cfg.diag_every;
    std::uint64_t cadence = snap == 0 ? diag : diag == 0 ? snap : std::gcd(snap, diag);

    std::vector<DiagnosticsRecord> records;
    SnapshotSink sink = [&](const SimState& s, std::uint64_t step) {
        if (snap > 0 && step % snap == 0)
            write_snapshot((fs::path(out_dir) / snap_name(step)).string(), s);
        if (diag > 0 && step % diag == 0) records.push_back(compute_diagnostics(s, dopt));
    };

    RunResult res = run(std::move(s0), sp, cfg.forcing, cfg.t_final, cadence, sink);

    write_snapshot((fs::path(out_dir) / "final.qghs").string(), res.final_state);
    if (!records.empty())
        write_diagnostics_csv((fs::path(out_dir) / "diagnostics.csv").string(), records);

    std::cout << "run: dt " << res.dt << ", steps " << res.steps_done << "/" << res.steps
              << ", final t " << res.final_state.t << "\n";
    if (!records.empty()) {
        ConservationReport rep = conservation_monitor(records);
        std::cout << "run: energy drift " << rep.energy_drift << ", hamiltonian drift "
                  << rep.hamiltonian_drift << ", max Lp growth " << rep.max_lp_growth << "\n";
    }
    if (res.blew_up || res.cfl_fault) {
        std::cout << "run: FAULT " << res.fault << "\n";
        std::cout << "run: partial trajectory written to " << out_dir << "\n";
        return 2;
    }
    std::cout << "run: outputs written to " << out_dir << "\n";
    return 0;
}

int cmd_verify(const std::string& config_path, const std::string& snapshot_path,
               const CliOverrides& o) {
    RunConfig cfg = effective_config(config_path, o);
    TorusGrid grid{cfg.n, cfg.l};
    SlabGrid slab{grid, cfg.nz, cfg.h};
    bool ok = true;
    auto report = [&ok](const std::string& name, bool pass, double metric) {
        std::cout << (pass ? "PASS " : "FAIL ") << name << " (" << metric << ")\n";
        if (!pass) ok = false;
    };

    SpectralField2D f = random_band_field(grid, cfg.seed, 1, static_cast<int>(grid.n) / 3, 1.0);

    // Riesz transforms square-sum to minus the identity away from the mean.
    {
        SpectralField2D rr = riesz(riesz(f, 1), 1);
        axpy(rr, 1.0, riesz(riesz(f, 2), 2));
        double dev = 0.0;
        for (std::size_t m = 1; m < f.c.size(); ++m)
            dev = std::max(dev, std::abs(rr.c[m] + f.c[m]));
        report("riesz_square_identity", dev <= 1e-12, dev);
    }

    // Mollifier weights form an exact partition of unity.
    {
        Mollifier moll(grid, 4.0 * grid.dx());
        double total = 0.0;
        for (int a = -moll.r; a <= moll.r; ++a)
            for (int b = -moll.r; b <= moll.r; ++b) total += moll.weight(a, b);
        double dev = std::fabs(total - 1.0);
        report("mollifier_partition", dev <= 1e-14, dev);
    }

    // Harmonic solve matches the closed form.
    {
        LayeredSpectral3D psi1 = solve_psi1(f, slab);
        double dev = 0.0;
        for (std::uint32_t iz = 0; iz < slab.nz; ++iz) {
            SpectralField2D exact = apply_multiplier_homogeneous(
                f, [z = slab.z(iz)](double kx, double ky) {
                    double kk = std::hypot(kx, ky);
                    return cplx(std::exp(-kk * z) / kk, 0.0);
                });
            for (std::size_t m = 0; m < exact.c.size(); ++m)
                dev = std::max(dev, std::abs(exact.c[m] - psi1.layer[iz].c[m]));
        }
        report("harmonic_extension", dev <= 1e-12, dev);
    }

    // Gradient projection is idempotent.
    {
        LayeredVec3<SpectralField2D> v(slab);
        std::mt19937_64 eng(cfg.seed + 7);
        std::normal_distribution<double> dist;
        for (auto& compf : v.comp)
            for (auto& lay : compf.layer) {
                PhysField2D ph(grid);
                for (auto& x : ph.v) x = dist(eng);
                lay = forward_transform(ph);
            }
        LayeredVec3<SpectralField2D> p1 = hodge_project(v);
        LayeredVec3<SpectralField2D> p2 = hodge_project(p1);
        double dev = 0.0, scale = 0.0;
        for (int c = 0; c < 3; ++c)
            for (std::uint32_t iz = 0; iz < slab.nz; ++iz)
                for (std::size_t m = 0; m < p1.comp[c].layer[iz].c.size(); ++m) {
                    dev = std::max(dev, std::abs(p1.comp[c].layer[iz].c[m] -
                                                 p2.comp[c].layer[iz].c[m]));
                    scale = std::max(scale, std::abs(p1.comp[c].layer[iz].c[m]));
                }
        report("hodge_idempotent", dev <= 1e-8 * std::max(scale, 1.0), dev);
    }

    // Snapshot round trip through a scratch file.
    {
        SimState s = snapshot_path.empty()
                         ? initial_state(cfg)
                         : read_snapshot(snapshot_path);
        fs::path tmp = fs::temp_directory_path() / "qghs_verify_roundtrip.qghs";
        write_snapshot(tmp.string(), s);
        SimState back = read_snapshot(tmp.string());
        double dev = std::fabs(back.t - s.t);
        for (std::size_t m = 0; m < s.theta.c.size(); ++m)
            dev = std::max(dev, std::abs(back.theta.c[m] - s.theta.c[m]));
        bool same_omega = back.omega_zero() == s.omega_zero();
        if (!back.omega_zero() && same_omega)
            for (std::uint32_t iz = 0; iz < slab.nz; ++iz)
                for (std::size_t m = 0; m < s.omega.layer[iz].c.size(); ++m)
                    dev = std::max(dev,
                                   std::abs(back.omega.layer[iz].c[m] - s.omega.layer[iz].c[m]));
        fs::remove(tmp);
        report("snapshot_roundtrip", same_omega && dev == 0.0, dev);
    }

    std::cout << (ok ? "verify: all checks passed\n" : "verify: FAILURES above\n");
    return ok ? 0 : 1;
}

int cmd_diagnose(const std::string& config_path, const std::string& out_dir,
                 const std::string& csv_name, bool with_residuals, const CliOverrides& o) {
    RunConfig cfg = effective_config(config_path, o);
    std::vector<fs::path> snaps;
    for (const auto& e : fs::directory_iterator(out_dir)) {
        std::string name = e.path().filename().string();
        if (name.rfind("snap_", 0) == 0 && name.size() > 5 && e.path().extension() == ".qghs")
            snaps.push_back(e.path());
    }
    check_runtime(!snaps.empty(), "diagnose: no snap_*.qghs files in '" + out_dir + "'");
    std::sort(snaps.begin(), snaps.end());

    DiagOptions dopt = diag_options(cfg);
    std::vector<DiagnosticsRecord> records;
    records.reserve(snaps.size());

    std::unique_ptr<ResidualEvaluator> ev;
    if (with_residuals) {
        SimState first = read_snapshot(snaps.front().string());
        SimState last = read_snapshot(snaps.back().string());
        check_runtime(last.t > first.t, "diagnose: trajectory spans zero time");
        std::vector<TestFunction> fns;
        fns.emplace_back(TestFunctionSpec{TestFunctionSpec::Kind::closure, 201, 1, 3},
                         first.slab(), last.t);
        fns.emplace_back(TestFunctionSpec{TestFunctionSpec::Kind::closure, 202, 1, 3},
                         first.slab(), last.t);
        fns.emplace_back(TestFunctionSpec{TestFunctionSpec::Kind::interior, 203, 1, 3},
                         first.slab(), last.t);
        fns.emplace_back(TestFunctionSpec{TestFunctionSpec::Kind::surface, 204, 1, 3},
                         first.slab(), last.t);
        ResidualOptions ropt;
        ropt.eps_diss = cfg.eps_diss;
        ropt.forcing = cfg.forcing;
        ev = std::make_unique<ResidualEvaluator>(std::move(fns), ropt);
    }

    for (const auto& p : snaps) {
        SimState s = read_snapshot(p.string());
        records.push_back(compute_diagnostics(s, dopt));
        if (ev) ev->add_snapshot(s);
    }
    write_diagnostics_csv((fs::path(out_dir) / csv_name).string(), records);
    std::cout << "diagnose: recomputed " << records.size() << " records into " << csv_name
              << "\n";

    if (ev) {
        EquivalenceReport rep = ev->finalize();
        for (const auto& row : rep.rows)
            std::cout << "residual " << row.label << ": grad " << row.res_grad << ", transport "
                      << row.combined_transport << ", commutator " << row.combined_commutator
                      << ", max pairwise "
                      << std::max({row.pair_grad_transport, row.pair_grad_commutator,
                                   row.pair_transport_commutator})
                      << "\n";
        std::cout << "residual summary: max pairwise " << rep.max_pairwise()
                  << ", max residual " << rep.max_residual() << "\n";
    }
    return 0;
}

int cmd_spectrum(const std::string& snapshot_path, double alpha, const std::string& out_file) {
    SimState s = read_snapshot(snapshot_path);
    std::string csv = spectrum_csv(s.theta, alpha);
    if (out_file.empty()) {
        std::cout << csv;
    } else {
        std::ofstream out(out_file, std::ios::binary | std::ios::trunc);
        check_runtime(static_cast<bool>(out), "cannot open '" + out_file + "' for writing");
        out << csv;
        std::cout << "spectrum: written to " << out_file << "\n";
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Half-space quasi-geostrophic pseudo-spectral solver"};
    app.require_subcommand(1);

    CliOverrides o;
    std::string config_path, out_dir, snapshot_path, csv_name = "diagnostics_recomputed.csv";
    std::string out_file;
    double alpha = 0.5;
    bool with_residuals = false;

    auto add_common = [&](CLI::App* c) {
        c->add_option("--seed", o.seed, "override the config seed")->each([&](const std::string&) {
            o.seed_set = true;
        });
        c->add_option("--threads", o.threads, "worker thread count");
        c->add_flag("--fixed-order", o.fixed_order,
                    "single-threaded, fixed evaluation order");
    };

    CLI::App* crun = app.add_subcommand("run", "integrate a configured state");
    crun->add_option("--config", config_path, "run configuration file")->required();
    crun->add_option("--out", out_dir, "output directory")->required();
    add_common(crun);

    CLI::App* cverify = app.add_subcommand("verify", "run the invariant checks");
    cverify->add_option("--config", config_path, "run configuration file")->required();
    cverify->add_option("--snapshot", snapshot_path, "state to verify (defaults to the config state)");
    add_common(cverify);

    CLI::App* cdiag = app.add_subcommand("diagnose", "recompute diagnostics from snapshots");
    cdiag->add_option("--config", config_path, "run configuration file")->required();
    cdiag->add_option("--out", out_dir, "directory holding snap_*.qghs")->required();
    cdiag->add_option("--csv", csv_name, "output CSV name");
    cdiag->add_flag("--residuals", with_residuals, "evaluate the weak-formulation residuals");
    add_common(cdiag);

    CLI::App* cspec = app.add_subcommand("spectrum", "dyadic spectrum of a snapshot");
    cspec->add_option("--snapshot", snapshot_path, "snapshot file")->required();
    cspec->add_option("--alpha", alpha, "Besov weight exponent");
    cspec->add_option("--out", out_file, "output file (stdout when omitted)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (crun->parsed()) return cmd_run(config_path, out_dir, o);
        if (cverify->parsed()) return cmd_verify(config_path, snapshot_path, o);
        if (cdiag->parsed()) return cmd_diagnose(config_path, out_dir, csv_name, with_residuals, o);
        if (cspec->parsed()) return cmd_spectrum(snapshot_path, alpha, out_file);
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
