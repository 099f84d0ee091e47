#include "mps/snapshot.hpp"

#include <bit>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <memory>
#include <stdexcept>

namespace mps {

static_assert(std::endian::native == std::endian::little,
              "snapshot format is little-endian; big-endian hosts are not supported");

namespace {

constexpr char magic[4] = {'M', 'P', 'S', '1'};
constexpr std::uint32_t format_version = 1;

struct FileCloser {
    void operator()(std::FILE* f) const {
        if (f) std::fclose(f);
    }
};
using file_ptr = std::unique_ptr<std::FILE, FileCloser>;

void write_all(std::FILE* f, const void* data, std::size_t bytes, const std::string& path) {
    if (std::fwrite(data, 1, bytes, f) != bytes)
        throw std::runtime_error("save_snapshot: short write to " + path);
}

void read_all(std::FILE* f, void* data, std::size_t bytes, const std::string& path) {
    if (std::fread(data, 1, bytes, f) != bytes)
        throw std::runtime_error("load_snapshot: truncated file " + path);
}

}  // namespace

void save_snapshot(const State& state, const Viscosities& visc, const std::string& path) {
    file_ptr f(std::fopen(path.c_str(), "wb"));
    if (!f) throw std::runtime_error("save_snapshot: cannot open " + path);
    const Grid3& g = state.grid();

    write_all(f.get(), magic, 4, path);
    const std::uint32_t ver = format_version;
    const std::uint32_t n = static_cast<std::uint32_t>(g.n);
    write_all(f.get(), &ver, 4, path);
    write_all(f.get(), &n, 4, path);
    const double header[6] = {g.L, state.time, visc.nu, visc.chi, visc.mu, visc.kappa};
    write_all(f.get(), header, sizeof(header), path);

    const std::size_t bytes = g.size() * sizeof(cplx);
    for (int m = 0; m < 3; ++m) write_all(f.get(), state.u[m].c.data(), bytes, path);
    for (int m = 0; m < 3; ++m) write_all(f.get(), state.omega[m].c.data(), bytes, path);
    if (std::fflush(f.get()) != 0) throw std::runtime_error("save_snapshot: flush failed for " + path);
}

Snapshot load_snapshot(const std::string& path) {
    file_ptr f(std::fopen(path.c_str(), "rb"));
    if (!f) throw std::runtime_error("load_snapshot: cannot open " + path);

    char got_magic[4];
    read_all(f.get(), got_magic, 4, path);
    if (std::memcmp(got_magic, magic, 4) != 0)
        throw std::runtime_error("load_snapshot: bad magic in " + path);

    std::uint32_t ver = 0, n = 0;
    read_all(f.get(), &ver, 4, path);
    if (ver != format_version)
        throw std::runtime_error("load_snapshot: unsupported version " + std::to_string(ver) + " in " + path);
    read_all(f.get(), &n, 4, path);

    double header[6];
    read_all(f.get(), header, sizeof(header), path);

    Grid3 g(static_cast<int>(n), header[0]);
    Snapshot snap{State(g), Viscosities(header[2], header[3], header[4], header[5])};
    snap.state.time = header[1];

    const std::size_t bytes = g.size() * sizeof(cplx);
    for (int m = 0; m < 3; ++m) read_all(f.get(), snap.state.u[m].c.data(), bytes, path);
    for (int m = 0; m < 3; ++m) read_all(f.get(), snap.state.omega[m].c.data(), bytes, path);

    // reject trailing garbage so corrupt files fail loudly
    char extra;
    if (std::fread(&extra, 1, 1, f.get()) == 1)
        throw std::runtime_error("load_snapshot: trailing bytes in " + path);
    return snap;
}

}  // namespace mps
