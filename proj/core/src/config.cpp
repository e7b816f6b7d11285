#include "qghs/config.hpp"

#include "qghs/errors.hpp"
#include "qghs/prepare.hpp"

#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

namespace qghs {

namespace {

std::string trim(const std::string& s) {
    std::size_t a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    std::size_t b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

[[noreturn]] void bad_line(std::size_t ln, const std::string& what) {
    throw std::invalid_argument("config line " + std::to_string(ln) + ": " + what);
}

// The diagnostic thrown by bad_line must not be swallowed by the catch
// clauses guarding the std::sto* call, so every post-parse validation sits
// outside the try block.
double parse_double(std::size_t ln, const std::string& v) {
    std::size_t used = 0;
    double x = 0.0;
    try {
        x = std::stod(v, &used);
    } catch (const std::invalid_argument&) {
        bad_line(ln, "expected a number, got '" + v + "'");
    } catch (const std::out_of_range&) {
        bad_line(ln, "number out of range '" + v + "'");
    }
    if (used != v.size()) bad_line(ln, "trailing characters in number '" + v + "'");
    return x;
}

std::uint64_t parse_uint(std::size_t ln, const std::string& v) {
    if (!v.empty() && v[0] == '-') bad_line(ln, "expected a nonnegative integer, got '" + v + "'");
    std::size_t used = 0;
    std::uint64_t x = 0;
    try {
        x = std::stoull(v, &used);
    } catch (const std::invalid_argument&) {
        bad_line(ln, "expected an integer, got '" + v + "'");
    } catch (const std::out_of_range&) {
        bad_line(ln, "integer out of range '" + v + "'");
    }
    if (used != v.size()) bad_line(ln, "trailing characters in integer '" + v + "'");
    return x;
}

int parse_int(std::size_t ln, const std::string& v) {
    std::size_t used = 0;
    int x = 0;
    try {
        x = std::stoi(v, &used);
    } catch (const std::invalid_argument&) {
        bad_line(ln, "expected an integer, got '" + v + "'");
    } catch (const std::out_of_range&) {
        bad_line(ln, "integer out of range '" + v + "'");
    }
    if (used != v.size()) bad_line(ln, "trailing characters in integer '" + v + "'");
    return x;
}

bool parse_bool(std::size_t ln, const std::string& v) {
    if (v == "1" || v == "true" || v == "on") return true;
    if (v == "0" || v == "false" || v == "off") return false;
    bad_line(ln, "expected a boolean (0/1/true/false), got '" + v + "'");
}

std::vector<double> parse_list(std::size_t ln, const std::string& v) {
    std::vector<double> out;
    std::stringstream ss(v);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (item.empty()) bad_line(ln, "empty entry in list '" + v + "'");
        out.push_back(parse_double(ln, item));
    }
    if (out.empty()) bad_line(ln, "empty list");
    return out;
}

} // namespace

RunConfig parse_config(const std::string& text) {
    RunConfig cfg;
    bool theta_seed_set = false, omega_seed_set = false;

    std::stringstream ss(text);
    std::string raw;
    std::size_t ln = 0;
    while (std::getline(ss, raw)) {
        ++ln;
        std::string line = raw;
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        auto eq = line.find('=');
        if (eq == std::string::npos) bad_line(ln, "expected key = value");
        std::string key = trim(line.substr(0, eq));
        std::string val = trim(line.substr(eq + 1));
        if (key.empty()) bad_line(ln, "empty key");
        if (val.empty()) bad_line(ln, "empty value for key '" + key + "'");

        if (key == "n") cfg.n = static_cast<std::uint32_t>(parse_uint(ln, val));
        else if (key == "l") cfg.l = parse_double(ln, val);
        else if (key == "nz") cfg.nz = static_cast<std::uint32_t>(parse_uint(ln, val));
        else if (key == "h") cfg.h = parse_double(ln, val);
        else if (key == "t_final") cfg.t_final = parse_double(ln, val);
        else if (key == "dt") cfg.dt = parse_double(ln, val);
        else if (key == "cfl") cfg.cfl = parse_double(ln, val);
        else if (key == "dt_cap") cfg.dt_cap = parse_double(ln, val);
        else if (key == "eps_diss") cfg.eps_diss = parse_double(ln, val);
        else if (key == "dealias") cfg.dealias = parse_bool(ln, val);
        else if (key == "seed") cfg.seed = parse_uint(ln, val);
        else if (key == "init_theta") cfg.theta_init.kind = val;
        else if (key == "init_theta_amp") cfg.theta_init.amp = parse_double(ln, val);
        else if (key == "init_theta_m1") cfg.theta_init.m1 = parse_int(ln, val);
        else if (key == "init_theta_m2") cfg.theta_init.m2 = parse_int(ln, val);
        else if (key == "init_theta_kmin") cfg.theta_init.kmin = parse_int(ln, val);
        else if (key == "init_theta_kmax") cfg.theta_init.kmax = parse_int(ln, val);
        else if (key == "init_theta_seed") { cfg.theta_init.seed = parse_uint(ln, val); theta_seed_set = true; }
        else if (key == "init_omega") cfg.omega_init.kind = val;
        else if (key == "init_omega_amp") cfg.omega_init.amp = parse_double(ln, val);
        else if (key == "init_omega_kmin") cfg.omega_init.kmin = parse_int(ln, val);
        else if (key == "init_omega_kmax") cfg.omega_init.kmax = parse_int(ln, val);
        else if (key == "init_omega_z0") cfg.omega_init.z0 = parse_double(ln, val);
        else if (key == "init_omega_zw") cfg.omega_init.zw = parse_double(ln, val);
        else if (key == "init_omega_seed") { cfg.omega_init.seed = parse_uint(ln, val); omega_seed_set = true; }
        else if (key == "forcing") cfg.forcing.kind = val;
        else if (key == "forcing_amp") cfg.forcing.amp = parse_double(ln, val);
        else if (key == "forcing_m1") cfg.forcing.m1 = parse_int(ln, val);
        else if (key == "forcing_m2") cfg.forcing.m2 = parse_int(ln, val);
        else if (key == "forcing_z0") cfg.forcing.z0 = parse_double(ln, val);
        else if (key == "forcing_zw") cfg.forcing.zw = parse_double(ln, val);
        else if (key == "prepare_eps") cfg.prepare_eps = parse_double(ln, val);
        else if (key == "snapshot_every") cfg.snapshot_every = parse_uint(ln, val);
        else if (key == "diag_every") cfg.diag_every = parse_uint(ln, val);
        else if (key == "p_exponents") cfg.p_exponents = parse_list(ln, val);
        else if (key == "q_exponents") cfg.q_exponents = parse_list(ln, val);
        else if (key == "besov_alphas") cfg.besov_alphas = parse_list(ln, val);
        else if (key == "flux_width") cfg.flux_width = parse_double(ln, val);
        else if (key == "threads") cfg.threads = static_cast<unsigned>(parse_uint(ln, val));
        else if (key == "fixed_order") cfg.fixed_order = parse_bool(ln, val);
        else bad_line(ln, "unknown key '" + key + "'");
    }

    if (!theta_seed_set) cfg.theta_init.seed = cfg.seed;
    if (!omega_seed_set) cfg.omega_init.seed = cfg.seed + 1;

    require(cfg.t_final > 0.0 && std::isfinite(cfg.t_final), "config: t_final must be positive");
    require(cfg.cfl > 0.0, "config: cfl must be positive");
    require(cfg.dt >= 0.0, "config: dt must be nonnegative");
    require(cfg.dt_cap > 0.0, "config: dt_cap must be positive");
    require(cfg.eps_diss >= 0.0, "config: eps_diss must be nonnegative");
    require(cfg.prepare_eps >= 0.0, "config: prepare_eps must be nonnegative");
    require(cfg.flux_width >= 0.0, "config: flux_width must be nonnegative");
    require(cfg.threads >= 1, "config: threads must be at least 1");
    for (double p : cfg.p_exponents)
        require(p > 4.0 / 3.0, "config: p exponents must lie in (4/3, inf)");
    for (double q : cfg.q_exponents)
        require(q > 6.0 / 5.0 && q < 3.0, "config: q exponents must lie in (6/5, 3)");
    for (double a : cfg.besov_alphas)
        require(a > 0.0 && a < 1.0, "config: Besov exponents must lie in (0, 1)");
    return cfg;
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    check_runtime(static_cast<bool>(in), "cannot open config file '" + path + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str());
}

SimState initial_state(const RunConfig& cfg) {
    TorusGrid grid{cfg.n, cfg.l};
    SlabGrid slab{grid, cfg.nz, cfg.h};
    SpectralField2D theta = make_theta(cfg.theta_init, grid);
    LayeredSpectral3D omega;
    omega.slab = slab;
    if (cfg.omega_init.kind != "zero") omega = make_omega(cfg.omega_init, slab);

    if (cfg.prepare_eps > 0.0) {
        LayeredPhys3D omega_phys;
        omega_phys.slab = slab;
        if (!omega.layer.empty()) omega_phys = to_physical(omega);
        PreparedData prepared = prepare_data(omega_phys, theta, cfg.prepare_eps);
        theta = std::move(prepared.theta);
        omega = std::move(prepared.omega);
    }
    return SimState(std::move(theta), std::move(omega), 0.0);
}

StepParams step_params(const RunConfig& cfg) {
    StepParams p;
    p.dt = cfg.dt;
    p.eps_diss = cfg.eps_diss;
    p.cfl = cfg.cfl;
    p.dt_cap = cfg.dt_cap;
    p.dealias = cfg.dealias;
    return p;
}

DiagOptions diag_options(const RunConfig& cfg) {
    DiagOptions d;
    d.theta_ps = cfg.p_exponents;
    d.omega_qs = cfg.q_exponents;
    d.besov_alphas = cfg.besov_alphas;
    d.flux_width = cfg.flux_width;
    return d;
}

} // namespace qghs
