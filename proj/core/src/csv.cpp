#include "qghs/csv.hpp"

#include "qghs/errors.hpp"
#include "qghs/littlewood_paley.hpp"
#include "qghs/spectral_ops.hpp"
#include "qghs/transform.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace qghs {

namespace {

std::string num17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string numshort(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%g", v);
    return buf;
}

std::vector<std::string> split(const std::string& line, char sep) {
    std::vector<std::string> out;
    std::stringstream ss(line);
    std::string item;
    while (std::getline(ss, item, sep)) out.push_back(item);
    if (!line.empty() && line.back() == sep) out.push_back("");
    return out;
}

double parse_num(const std::string& s) {
    char* end = nullptr;
    double v = std::strtod(s.c_str(), &end);
    check_runtime(end == s.c_str() + s.size() && !s.empty(),
                  "diagnostics CSV: malformed number '" + s + "'");
    return v;
}

} // namespace

std::string diagnostics_csv(const std::vector<DiagnosticsRecord>& records) {
    require(!records.empty(), "diagnostics_csv: no records");
    const DiagnosticsRecord& first = records.front();

    std::string out = "t,energy,hamiltonian";
    if (first.has_flux) out += ",flux";
    for (const auto& [p, v] : first.theta_lp) out += ",theta_lp_" + numshort(p);
    for (const auto& [q, v] : first.omega_lq) out += ",omega_lq_" + numshort(q);
    for (const auto& [a, v] : first.besov) out += ",besov_" + numshort(a);
    out += "\n";

    for (const auto& r : records) {
        require(r.has_flux == first.has_flux && r.theta_lp.size() == first.theta_lp.size() &&
                    r.omega_lq.size() == first.omega_lq.size() &&
                    r.besov.size() == first.besov.size(),
                "diagnostics_csv: records disagree on the column set");
        out += num17(r.t) + "," + num17(r.energy) + "," + num17(r.hamiltonian);
        if (r.has_flux) out += "," + num17(r.flux);
        for (const auto& [p, v] : r.theta_lp) out += "," + num17(v);
        for (const auto& [q, v] : r.omega_lq) out += "," + num17(v);
        for (const auto& [a, v] : r.besov) out += "," + num17(v);
        out += "\n";
    }
    return out;
}

void write_diagnostics_csv(const std::string& path,
                           const std::vector<DiagnosticsRecord>& records) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    check_runtime(static_cast<bool>(out), "cannot open '" + path + "' for writing");
    out << diagnostics_csv(records);
    out.flush();
    check_runtime(static_cast<bool>(out), "short write to '" + path + "'");
}

std::vector<DiagnosticsRecord> parse_diagnostics_csv(const std::string& text) {
    std::stringstream ss(text);
    std::string line;
    check_runtime(static_cast<bool>(std::getline(ss, line)), "diagnostics CSV: empty input");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::vector<std::string> cols = split(line, ',');
    check_runtime(cols.size() >= 3 && cols[0] == "t" && cols[1] == "energy" &&
                      cols[2] == "hamiltonian",
                  "diagnostics CSV: unexpected header");

    struct Slot {
        int kind; // 0 flux, 1 theta_lp, 2 omega_lq, 3 besov
        double exponent;
    };
    std::vector<Slot> slots;
    for (std::size_t i = 3; i < cols.size(); ++i) {
        const std::string& c = cols[i];
        auto tagged = [&c](const char* prefix) {
            return c.rfind(prefix, 0) == 0 ? c.substr(std::string(prefix).size()) : std::string();
        };
        if (c == "flux") slots.push_back({0, 0.0});
        else if (auto s = tagged("theta_lp_"); !s.empty()) slots.push_back({1, parse_num(s)});
        else if (auto s = tagged("omega_lq_"); !s.empty()) slots.push_back({2, parse_num(s)});
        else if (auto s = tagged("besov_"); !s.empty()) slots.push_back({3, parse_num(s)});
        else check_runtime(false, "diagnostics CSV: unknown column '" + c + "'");
    }

    std::vector<DiagnosticsRecord> records;
    std::size_t ln = 1;
    while (std::getline(ss, line)) {
        ++ln;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        std::vector<std::string> vals = split(line, ',');
        check_runtime(vals.size() == cols.size(), "diagnostics CSV line " + std::to_string(ln) +
                                                      ": wrong number of fields");
        DiagnosticsRecord r;
        r.t = parse_num(vals[0]);
        r.energy = parse_num(vals[1]);
        r.hamiltonian = parse_num(vals[2]);
        for (std::size_t i = 0; i < slots.size(); ++i) {
            double v = parse_num(vals[3 + i]);
            switch (slots[i].kind) {
            case 0: r.flux = v; r.has_flux = true; break;
            case 1: r.theta_lp.emplace_back(slots[i].exponent, v); break;
            case 2: r.omega_lq.emplace_back(slots[i].exponent, v); break;
            case 3: r.besov.emplace_back(slots[i].exponent, v); break;
            }
        }
        records.push_back(std::move(r));
    }
    check_runtime(!records.empty(), "diagnostics CSV: no data rows");
    return records;
}

std::vector<DiagnosticsRecord> load_diagnostics_csv(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    check_runtime(static_cast<bool>(in), "cannot open '" + path + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_diagnostics_csv(buf.str());
}

std::string spectrum_csv(const SpectralField2D& u, double alpha) {
    std::vector<DyadicBand> bands = dyadic_bands(u.grid);
    std::vector<double> energies = band_energies(u);
    std::string out = "j,band_lo,band_hi,energy,weighted_l3\n";
    for (std::size_t b = 0; b < bands.size(); ++b) {
        SpectralField2D block = lp_project(u, bands[b]);
        double l3 = lp_norm(inverse_transform(block), 3.0);
        double weighted = std::pow(2.0, alpha * bands[b].j) * l3;
        out += std::to_string(bands[b].j) + "," + num17(bands[b].lo()) + "," +
               num17(bands[b].hi()) + "," + num17(energies[b]) + "," + num17(weighted) + "\n";
    }
    return out;
}

} // namespace qghs
