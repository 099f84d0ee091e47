#include "mps/transform.hpp"

#include <fftw3.h>

#include <cstring>
#include <map>
#include <mutex>
#include <stdexcept>

namespace mps {

namespace {

// One cached plan pair per grid size. Plans are created with FFTW_ESTIMATE so
// planning is deterministic run to run, and executed on dedicated buffers so
// callers never hand FFTW unaligned memory.
struct PlanEntry {
    fftw_complex* in = nullptr;
    fftw_complex* out = nullptr;
    fftw_plan fwd = nullptr;
    fftw_plan bwd = nullptr;
    std::size_t count = 0;

    explicit PlanEntry(int n) {
        count = static_cast<std::size_t>(n) * n * n;
        in = fftw_alloc_complex(count);
        out = fftw_alloc_complex(count);
        if (!in || !out) throw std::runtime_error("transform: fftw buffer allocation failed");
        fwd = fftw_plan_dft_3d(n, n, n, in, out, FFTW_FORWARD, FFTW_ESTIMATE);
        bwd = fftw_plan_dft_3d(n, n, n, in, out, FFTW_BACKWARD, FFTW_ESTIMATE);
        if (!fwd || !bwd) throw std::runtime_error("transform: fftw planning failed");
    }

    PlanEntry(const PlanEntry&) = delete;
    PlanEntry& operator=(const PlanEntry&) = delete;

    ~PlanEntry() {
        if (fwd) fftw_destroy_plan(fwd);
        if (bwd) fftw_destroy_plan(bwd);
        if (in) fftw_free(in);
        if (out) fftw_free(out);
    }
};

std::mutex plan_mutex;

PlanEntry& plan_for(int n) {
    static std::map<int, PlanEntry> cache;
    auto it = cache.find(n);
    if (it == cache.end()) it = cache.try_emplace(n, n).first;
    return it->second;
}

void check_finite(const std::vector<cplx>& v, const char* what) {
    for (const cplx& z : v)
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
            throw std::invalid_argument(std::string("transform: non-finite value in ") + what);
}

}  // namespace

std::vector<cplx> to_physical(const SpectralField& f) {
    check_finite(f.c, "spectral input");
    std::lock_guard<std::mutex> lock(plan_mutex);
    PlanEntry& p = plan_for(f.grid.n);
    static_assert(sizeof(fftw_complex) == sizeof(cplx));
    std::memcpy(p.in, f.c.data(), p.count * sizeof(cplx));
    fftw_execute(p.bwd);
    std::vector<cplx> phys(p.count);
    std::memcpy(static_cast<void*>(phys.data()), p.out, p.count * sizeof(cplx));
    return phys;
}

SpectralField to_spectral(const Grid3& grid, const std::vector<cplx>& phys, bool enforce_reality) {
    if (phys.size() != grid.size())
        throw std::invalid_argument("transform: sample array size does not match grid");
    check_finite(phys, "physical input");
    SpectralField f(grid);
    {
        std::lock_guard<std::mutex> lock(plan_mutex);
        PlanEntry& p = plan_for(grid.n);
        std::memcpy(p.in, phys.data(), p.count * sizeof(cplx));
        fftw_execute(p.fwd);
        std::memcpy(static_cast<void*>(f.c.data()), p.out, p.count * sizeof(cplx));
    }
    const double inv = 1.0 / static_cast<double>(grid.size());
    for (cplx& z : f.c) z *= inv;
    if (enforce_reality) f.enforce_hermitian();
    f.reality = enforce_reality;
    return f;
}

std::vector<double> to_physical_real(const SpectralField& f) {
    std::vector<cplx> phys = to_physical(f);
    double amp = 0.0;
    for (const cplx& z : phys) amp = std::max(amp, std::abs(z));
    std::vector<double> out(phys.size());
    const double tol = 1e-10 * std::max(amp, 1e-300);
    for (std::size_t i = 0; i < phys.size(); ++i) {
        if (std::abs(phys[i].imag()) > tol)
            throw std::invalid_argument("to_physical_real: field has a non-trivial imaginary part");
        out[i] = phys[i].real();
    }
    return out;
}

}  // namespace mps
