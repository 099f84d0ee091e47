#pragma once

#include <array>
#include <complex>
#include <stdexcept>
#include <vector>

#include "mps/grid.hpp"

namespace mps {

using cplx = std::complex<double>;

// One scalar component in spectral representation. `reality` marks fields that
// represent real-valued physical data and are kept Hermitian-symmetric.
struct SpectralField {
    Grid3 grid;
    std::vector<cplx> c;
    bool reality = true;

    SpectralField() = default;
    explicit SpectralField(const Grid3& g) : grid(g), c(g.size(), cplx(0.0, 0.0)) {}

    cplx& at(int i0, int i1, int i2) { return c[grid.flat(i0, i1, i2)]; }
    const cplx& at(int i0, int i1, int i2) const { return c[grid.flat(i0, i1, i2)]; }

    // access by signed mode indices
    cplx& mode(int k0, int k1, int k2) {
        return c[grid.flat(grid.index_of(k0), grid.index_of(k1), grid.index_of(k2))];
    }
    const cplx& mode(int k0, int k1, int k2) const {
        return c[grid.flat(grid.index_of(k0), grid.index_of(k1), grid.index_of(k2))];
    }

    double max_abs() const {
        double m = 0.0;
        for (const cplx& z : c) m = std::max(m, std::abs(z));
        return m;
    }

    bool all_finite() const {
        for (const cplx& z : c)
            if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
        return true;
    }

    // Symmetrize so that c(-k) = conj(c(k)). Modes that are their own mirror
    // image (every index in {0, -n/2}) end up real.
    void enforce_hermitian();

    // max_k |c(-k) - conj(c(k))|
    double hermitian_error() const;
};

struct VectorField {
    std::array<SpectralField, 3> comp;

    VectorField() = default;
    explicit VectorField(const Grid3& g) : comp{SpectralField(g), SpectralField(g), SpectralField(g)} {}

    const Grid3& grid() const { return comp[0].grid; }
    SpectralField& operator[](int i) { return comp[i]; }
    const SpectralField& operator[](int i) const { return comp[i]; }

    double max_abs() const {
        return std::max(comp[0].max_abs(), std::max(comp[1].max_abs(), comp[2].max_abs()));
    }

    void enforce_hermitian() {
        for (auto& f : comp) f.enforce_hermitian();
    }
};

// Velocity u (divergence-free) and microrotation omega at one instant.
struct State {
    VectorField u;
    VectorField omega;
    double time = 0.0;

    State() = default;
    explicit State(const Grid3& g) : u(g), omega(g) {}

    const Grid3& grid() const { return u.grid(); }
};

struct Viscosities {
    double nu = 0.5;
    double chi = 0.5;
    double mu = 1.0;
    double kappa = 1.0;

    Viscosities() = default;
    // chi = 0 switches the angular coupling off (plain Navier-Stokes for u),
    // which the solver tests lean on; the three diffusivities must stay positive.
    Viscosities(double nu_, double chi_, double mu_, double kappa_)
        : nu(nu_), chi(chi_), mu(mu_), kappa(kappa_) {
        if (!(nu > 0.0 && mu > 0.0 && kappa > 0.0))
            throw std::invalid_argument("Viscosities: nu, mu, kappa must be strictly positive");
        if (!(chi >= 0.0))
            throw std::invalid_argument("Viscosities: chi must be nonnegative");
    }

    static Viscosities normalized() { return Viscosities(0.5, 0.5, 1.0, 1.0); }

    bool is_normalized() const { return nu == 0.5 && chi == 0.5 && mu == 1.0 && kappa == 1.0; }

    // chi + nu, the velocity diffusion coefficient of the coupled system
    double chi_bar() const { return chi + nu; }
};

// max_k |xi . u_hat(k)| / max_k |u_hat(k)|; 0 for the zero field
double divergence_error(const VectorField& u);

// scale relative to which the divergence-free invariant is enforced
inline constexpr double div_free_tol = 1e-10;

bool is_divergence_free(const VectorField& u, double tol = div_free_tol);

}  // namespace mps
