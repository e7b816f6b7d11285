#include <doctest.h>

#include "qghs/config.hpp"
#include "qghs/spectral_ops.hpp"
#include "qghs/transform.hpp"

#include "test_util.hpp"

#include <cstdio>
#include <fstream>

using namespace qghs;
using namespace qghs::testutil;

namespace {

bool throws_mentioning(const std::string& text, const std::string& needle) {
    try {
        parse_config(text);
    } catch (const std::exception& e) {
        return std::string(e.what()).find(needle) != std::string::npos;
    }
    return false;
}

} // namespace

TEST_SUITE("config") {

TEST_CASE("empty input yields the documented defaults") {
    RunConfig cfg = parse_config("");
    CHECK(cfg.n == 64);
    CHECK(cfg.l == doctest::Approx(2.0 * M_PI).epsilon(1e-15));
    CHECK(cfg.nz == 32);
    CHECK(cfg.h == doctest::Approx(M_PI).epsilon(1e-15));
    CHECK(cfg.t_final == 1.0);
    CHECK(cfg.dt == 0.0);
    CHECK(cfg.cfl == 0.4);
    CHECK(cfg.dt_cap == 0.1);
    CHECK(cfg.eps_diss == 0.0);
    CHECK(cfg.dealias);
    CHECK(cfg.seed == 1);
    CHECK(cfg.theta_init.kind == "zero");
    CHECK(cfg.omega_init.kind == "zero");
    CHECK(cfg.theta_init.seed == 1);  // inherits seed
    CHECK(cfg.omega_init.seed == 2);  // seed + 1
    CHECK(cfg.prepare_eps == 0.0);
    CHECK(cfg.snapshot_every == 0);
    CHECK(cfg.diag_every == 0);
    CHECK(cfg.p_exponents == std::vector<double>{2.0, 3.0, 4.0});
    CHECK(cfg.q_exponents == std::vector<double>{2.0});
    CHECK(cfg.besov_alphas == std::vector<double>{0.5});
    CHECK(cfg.flux_width == 0.0);
    CHECK(cfg.threads == 1);
    CHECK_FALSE(cfg.fixed_order);
}

TEST_CASE("every key is parsed into its field") {
    RunConfig cfg = parse_config(
        "n = 128\n"
        "l = 12.0\n"
        "nz = 48\n"
        "h = 7.5\n"
        "t_final = 2.5\n"
        "dt = 0.01\n"
        "cfl = 0.3   # inline comment\n"
        "dt_cap = 0.05\n"
        "eps_diss = 0.125\n"
        "dealias = off\n"
        "seed = 77\n"
        "init_theta = random_band\n"
        "init_theta_amp = 0.5\n"
        "init_theta_m1 = 3\n"
        "init_theta_m2 = -2\n"
        "init_theta_kmin = 2\n"
        "init_theta_kmax = 9\n"
        "init_theta_seed = 101\n"
        "init_omega = band_profile\n"
        "init_omega_amp = 0.25\n"
        "init_omega_kmin = 1\n"
        "init_omega_kmax = 3\n"
        "init_omega_z0 = 0.6\n"
        "init_omega_zw = 0.15\n"
        "init_omega_seed = 202\n"
        "forcing = surface_mode\n"
        "forcing_amp = 0.01\n"
        "forcing_m1 = 2\n"
        "forcing_m2 = 1\n"
        "forcing_z0 = 0.3\n"
        "forcing_zw = 0.1\n"
        "prepare_eps = 0.2\n"
        "snapshot_every = 10\n"
        "diag_every = 5\n"
        "p_exponents = 2, 3.5\n"
        "q_exponents = 1.5, 2.5\n"
        "besov_alphas = 0.25, 0.75\n"
        "flux_width = 0.4\n"
        "threads = 4\n"
        "fixed_order = true\n");
    CHECK(cfg.n == 128);
    CHECK(cfg.l == 12.0);
    CHECK(cfg.nz == 48);
    CHECK(cfg.h == 7.5);
    CHECK(cfg.t_final == 2.5);
    CHECK(cfg.dt == 0.01);
    CHECK(cfg.cfl == 0.3);
    CHECK(cfg.dt_cap == 0.05);
    CHECK(cfg.eps_diss == 0.125);
    CHECK_FALSE(cfg.dealias);
    CHECK(cfg.seed == 77);
    CHECK(cfg.theta_init.kind == "random_band");
    CHECK(cfg.theta_init.amp == 0.5);
    CHECK(cfg.theta_init.m1 == 3);
    CHECK(cfg.theta_init.m2 == -2);
    CHECK(cfg.theta_init.kmin == 2);
    CHECK(cfg.theta_init.kmax == 9);
    CHECK(cfg.theta_init.seed == 101); // explicit, not inherited
    CHECK(cfg.omega_init.kind == "band_profile");
    CHECK(cfg.omega_init.amp == 0.25);
    CHECK(cfg.omega_init.kmin == 1);
    CHECK(cfg.omega_init.kmax == 3);
    CHECK(cfg.omega_init.z0 == 0.6);
    CHECK(cfg.omega_init.zw == 0.15);
    CHECK(cfg.omega_init.seed == 202);
    CHECK(cfg.forcing.kind == "surface_mode");
    CHECK(cfg.forcing.amp == 0.01);
    CHECK(cfg.forcing.m1 == 2);
    CHECK(cfg.forcing.m2 == 1);
    CHECK(cfg.forcing.z0 == 0.3);
    CHECK(cfg.forcing.zw == 0.1);
    CHECK(cfg.prepare_eps == 0.2);
    CHECK(cfg.snapshot_every == 10);
    CHECK(cfg.diag_every == 5);
    CHECK(cfg.p_exponents == std::vector<double>{2.0, 3.5});
    CHECK(cfg.q_exponents == std::vector<double>{1.5, 2.5});
    CHECK(cfg.besov_alphas == std::vector<double>{0.25, 0.75});
    CHECK(cfg.flux_width == 0.4);
    CHECK(cfg.threads == 4);
    CHECK(cfg.fixed_order);
}

TEST_CASE("errors carry the offending line number") {
    CHECK(throws_mentioning("n = 32\n\n# fine\nn = x\n", "line 4"));
    CHECK(throws_mentioning("mystery = 1\n", "unknown key 'mystery'"));
    CHECK(throws_mentioning("just words\n", "line 1"));
    CHECK(throws_mentioning("n =\n", "empty value"));
    CHECK(throws_mentioning("= 5\n", "empty key"));
    CHECK(throws_mentioning("n = 12abc\n", "trailing characters"));
    CHECK(throws_mentioning("seed = -3\n", "nonnegative"));
    CHECK(throws_mentioning("dealias = maybe\n", "boolean"));
    CHECK(throws_mentioning("p_exponents = 2,,3\n", "empty entry"));
}

TEST_CASE("admissible exponent windows are enforced") {
    CHECK_THROWS(parse_config("p_exponents = 1.2\n"));
    CHECK_THROWS(parse_config("p_exponents = 2, 1.3\n"));
    CHECK_NOTHROW(parse_config("p_exponents = 1.5\n"));
    CHECK_NOTHROW(parse_config("p_exponents = 100.0\n")); // open above
    CHECK_THROWS(parse_config("q_exponents = 1.2\n"));
    CHECK_THROWS(parse_config("q_exponents = 3.0\n"));
    CHECK_NOTHROW(parse_config("q_exponents = 2.9\n"));
    CHECK_THROWS(parse_config("besov_alphas = 0.0\n"));
    CHECK_THROWS(parse_config("besov_alphas = 1.0\n"));
    CHECK_NOTHROW(parse_config("besov_alphas = 0.99\n"));
}

TEST_CASE("scalar gates reject out-of-range values") {
    CHECK_THROWS(parse_config("t_final = 0\n"));
    CHECK_THROWS(parse_config("t_final = -1\n"));
    CHECK_THROWS(parse_config("dt = -0.5\n"));
    CHECK_THROWS(parse_config("cfl = 0\n"));
    CHECK_THROWS(parse_config("dt_cap = 0\n"));
    CHECK_THROWS(parse_config("eps_diss = -0.1\n"));
    CHECK_THROWS(parse_config("prepare_eps = -1\n"));
    CHECK_THROWS(parse_config("flux_width = -1\n"));
    CHECK_THROWS(parse_config("threads = 0\n"));
}

TEST_CASE("initial state materializes the configured data") {
    RunConfig cfg = parse_config(
        "n = 32\nnz = 16\ninit_theta = single_mode\ninit_theta_amp = 2.0\n"
        "init_theta_m1 = 1\ninit_theta_m2 = 1\n");
    SimState s = initial_state(cfg);
    CHECK(s.t == 0.0);
    CHECK(s.omega_zero());
    CHECK(s.omega.layer.empty()); // zero kind collapses to the empty form
    CHECK(max_coeff_dev(s.theta, cosine_mode(s.grid(), 1, 1, 2.0)) == 0.0);

    RunConfig cw = parse_config(
        "n = 32\nnz = 16\ninit_omega = band_profile\ninit_omega_amp = 0.5\n");
    SimState sw = initial_state(cw);
    CHECK_FALSE(sw.omega_zero());
    CHECK(sw.omega.layer.size() == 16);

    // Data preparation must not grow the surface norms.
    RunConfig cp = parse_config(
        "n = 64\nnz = 16\ninit_theta = random_band\ninit_theta_kmax = 8\n"
        "prepare_eps = 0.4\n");
    RunConfig craw = cp;
    craw.prepare_eps = 0.0;
    SimState prepared = initial_state(cp);
    SimState raw = initial_state(craw);
    for (double p : {2.0, 3.0}) {
        double a = lp_norm(inverse_transform(prepared.theta), p);
        double b = lp_norm(inverse_transform(raw.theta), p);
        CHECK(a <= b * (1.0 + 1e-10));
    }
}

TEST_CASE("derived parameter bundles mirror the config") {
    RunConfig cfg = parse_config(
        "dt = 0.02\ncfl = 0.35\ndt_cap = 0.08\neps_diss = 0.05\ndealias = false\n"
        "p_exponents = 2.5\nq_exponents = 2.25\nbesov_alphas = 0.4\nflux_width = 0.3\n");
    StepParams p = step_params(cfg);
    CHECK(p.dt == 0.02);
    CHECK(p.cfl == 0.35);
    CHECK(p.dt_cap == 0.08);
    CHECK(p.eps_diss == 0.05);
    CHECK_FALSE(p.dealias);
    DiagOptions d = diag_options(cfg);
    CHECK(d.theta_ps == std::vector<double>{2.5});
    CHECK(d.omega_qs == std::vector<double>{2.25});
    CHECK(d.besov_alphas == std::vector<double>{0.4});
    CHECK(d.flux_width == 0.3);
}

TEST_CASE("load_config reads files and reports missing ones") {
    CHECK_THROWS(load_config("/nonexistent/path/run.cfg"));
    std::string path = "config_roundtrip_test.cfg";
    {
        std::ofstream out(path, std::ios::binary);
        out << "n = 16\nseed = 5\n";
    }
    RunConfig cfg = load_config(path);
    CHECK(cfg.n == 16);
    CHECK(cfg.seed == 5);
    CHECK(cfg.theta_init.seed == 5);
    std::remove(path.c_str());
}

} // TEST_SUITE
