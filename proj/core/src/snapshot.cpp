#include "qghs/snapshot.hpp"

#include "qghs/errors.hpp"

#include <bit>
#include <cstring>
#include <fstream>
#include <vector>

static_assert(std::endian::native == std::endian::little,
              "snapshot format assumes a little-endian host");

namespace qghs {

namespace {

constexpr char MAGIC[4] = {'Q', 'G', 'H', 'S'};
constexpr std::uint32_t VERSION = 1;

template <class T>
void put(std::ofstream& out, T v) {
    out.write(reinterpret_cast<const char*>(&v), sizeof(T));
}

template <class T>
T get(std::ifstream& in, const std::string& path) {
    T v{};
    in.read(reinterpret_cast<char*>(&v), sizeof(T));
    check_runtime(static_cast<bool>(in), "snapshot '" + path + "': truncated file");
    return v;
}

void put_field(std::ofstream& out, const SpectralField2D& f) {
    for (const auto& c : f.c) {
        put(out, c.real());
        put(out, c.imag());
    }
}

void get_field(std::ifstream& in, SpectralField2D& f, const std::string& path) {
    for (auto& c : f.c) {
        double re = get<double>(in, path);
        double im = get<double>(in, path);
        c = cplx(re, im);
    }
}

} // namespace

void write_snapshot(const std::string& path, const SimState& s) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    check_runtime(static_cast<bool>(out), "cannot open snapshot '" + path + "' for writing");
    out.write(MAGIC, 4);
    put(out, VERSION);
    put(out, s.grid().n);
    put(out, s.slab().nz);
    put(out, s.grid().l);
    put(out, s.slab().h);
    put(out, s.t);
    put_field(out, s.theta);
    if (s.omega_zero()) {
        std::vector<char> zeros(static_cast<std::size_t>(s.grid().size()) * 16, 0);
        for (std::uint32_t iz = 0; iz < s.slab().nz; ++iz)
            out.write(zeros.data(), static_cast<std::streamsize>(zeros.size()));
    } else {
        for (const auto& lay : s.omega.layer) put_field(out, lay);
    }
    out.flush();
    check_runtime(static_cast<bool>(out), "short write to snapshot '" + path + "'");
}

SimState read_snapshot(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    check_runtime(static_cast<bool>(in), "cannot open snapshot '" + path + "'");
    char magic[4] = {};
    in.read(magic, 4);
    check_runtime(static_cast<bool>(in) && std::memcmp(magic, MAGIC, 4) == 0,
                  "snapshot '" + path + "': bad magic");
    std::uint32_t version = get<std::uint32_t>(in, path);
    check_runtime(version == VERSION, "snapshot '" + path + "': unsupported version " +
                                          std::to_string(version));
    std::uint32_t n = get<std::uint32_t>(in, path);
    std::uint32_t nz = get<std::uint32_t>(in, path);
    double l = get<double>(in, path);
    double h = get<double>(in, path);
    double t = get<double>(in, path);

    TorusGrid grid{n, l};
    SlabGrid slab{grid, nz, h};
    SpectralField2D theta(grid);
    get_field(in, theta, path);
    LayeredSpectral3D omega(slab);
    bool any = false;
    for (auto& lay : omega.layer) {
        get_field(in, lay, path);
        for (const auto& c : lay.c)
            if (c != cplx(0.0, 0.0)) any = true;
    }
    char extra = 0;
    in.read(&extra, 1);
    check_runtime(in.eof(), "snapshot '" + path + "': trailing bytes");
    if (!any) omega.layer.clear();
    return SimState(std::move(theta), std::move(omega), t);
}

} // namespace qghs
