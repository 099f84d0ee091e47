#include "mps/initial_data.hpp"

#include <cmath>
#include <stdexcept>

#include "mps/ops.hpp"
#include "mps/random_fields.hpp"
#include "mps/transform.hpp"

namespace mps {

namespace {

// fixed unit directions for the coherent-phase variant; chosen once, away
// from the lattice axes so no projection degenerates
const std::array<double, 3> coherent_u = {0.81800016, 0.50716010, 0.22086004};
const std::array<double, 3> coherent_w = {0.26103951, 0.84206297, 0.46313530};

void scale_to(VectorField& v, double target) {
    const double n = l2_norm(v);
    if (n == 0.0) {
        if (target != 0.0)
            throw std::invalid_argument("make_initial_state: zero field cannot be normalized");
        return;
    }
    scale(v, target / n);
}

State taylor_green(const Grid3& g, const InitialData& data) {
    const int n = g.n;
    const double a = 2.0 * pi / g.L;
    std::vector<cplx> u0(g.size()), u1(g.size());
    for (int i0 = 0; i0 < n; ++i0)
        for (int i1 = 0; i1 < n; ++i1)
            for (int i2 = 0; i2 < n; ++i2) {
                const double x = a * (g.L * i0 / n);
                const double y = a * (g.L * i1 / n);
                const double z = a * (g.L * i2 / n);
                const std::size_t id = g.flat(i0, i1, i2);
                u0[id] = std::sin(x) * std::cos(y) * std::cos(z);
                u1[id] = -std::cos(x) * std::sin(y) * std::cos(z);
            }
    State s(g);
    s.u[0] = to_spectral(g, u0);
    s.u[1] = to_spectral(g, u1);
    scale_to(s.u, data.amplitude);
    return s;
}

State kato_oscillating(const Grid3& g, const InitialData& data) {
    if (!(data.epsilon > 0.0))
        throw std::invalid_argument("make_initial_state: epsilon must be positive");
    // snap the oscillation frequency to the lattice so the data is periodic
    const int m = std::max(1, static_cast<int>(std::lround(g.L / (2.0 * pi * data.epsilon))));
    if (m > g.dealias_kmax())
        throw std::invalid_argument("make_initial_state: oscillation finer than the dealias band");
    const double xk = 2.0 * pi * m / g.L;

    rng_t rng = make_rng(data.seed);
    std::uniform_real_distribution<double> shift(0.0, g.L);
    const double c0 = shift(rng), c1 = shift(rng);

    // Phi(x1, x2) = exp(-8 [sin^2(pi (x1-c0)/L) + sin^2(pi (x2-c1)/L)]), a
    // smooth periodic bump. The horizontal field (-d2 Phi, d1 Phi, 0) is
    // built with lattice (spectral) derivatives of the sampled bump, so its
    // divergence vanishes identically; multiplying by sin(x3 xk) afterwards
    // only shifts the vertical mode by +-m and keeps that exact.
    const int n = g.n;
    const double w = pi / g.L;
    std::vector<cplx> phi(g.size());
    for (int i0 = 0; i0 < n; ++i0)
        for (int i1 = 0; i1 < n; ++i1) {
            const double s1 = std::sin(w * (g.L * i0 / n - c0));
            const double s2 = std::sin(w * (g.L * i1 / n - c1));
            const double val = std::exp(-8.0 * (s1 * s1 + s2 * s2));
            for (int i2 = 0; i2 < n; ++i2) phi[g.flat(i0, i1, i2)] = val;
        }
    SpectralField phat = to_spectral(g, phi);
    // the bump's sampling tail reaches the Nyquist planes, which cannot carry
    // an odd symbol; clear them before differentiating
    for (int i0 = 0; i0 < n; ++i0)
        for (int i1 = 0; i1 < n; ++i1)
            for (int i2 = 0; i2 < n; ++i2)
                if (g.mode(i0) == -n / 2 || g.mode(i1) == -n / 2 || g.mode(i2) == -n / 2)
                    phat.at(i0, i1, i2) = 0.0;
    const VectorField dphi = gradient(phat);
    std::vector<double> p0 = to_physical_real(dphi[1]);
    std::vector<double> p1 = to_physical_real(dphi[0]);

    std::vector<cplx> u0(g.size()), u1(g.size());
    for (int i0 = 0; i0 < n; ++i0)
        for (int i1 = 0; i1 < n; ++i1)
            for (int i2 = 0; i2 < n; ++i2) {
                const double osc = std::sin(xk * (g.L * i2 / n));
                const std::size_t id = g.flat(i0, i1, i2);
                u0[id] = -p0[id] * osc;
                u1[id] = p1[id] * osc;
            }
    State s(g);
    s.u[0] = to_spectral(g, u0);
    s.u[1] = to_spectral(g, u1);
    scale_to(s.u, data.amplitude);
    return s;
}

State random_slope(const Grid3& g, const InitialData& data) {
    if (data.band < 1 || data.band > g.dealias_kmax())
        throw std::invalid_argument("make_initial_state: band outside the dealias range");
    rng_t rng = make_rng(data.seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    const double step = g.xi_step();
    const double expo = data.sigma - 1.5;

    State s(g);
    const int b = data.band;
    for (int k0 = -b; k0 <= b; ++k0)
        for (int k1 = -b; k1 <= b; ++k1)
            for (int k2 = -b; k2 <= b; ++k2) {
                const int kk = k0 * k0 + k1 * k1 + k2 * k2;
                if (kk == 0 || kk > b * b) continue;
                // fill each conjugate pair from its lexicographically
                // positive half so the per-mode magnitude is exact
                if (!(k0 > 0 || (k0 == 0 && (k1 > 0 || (k1 == 0 && k2 > 0))))) continue;

                const double xi[3] = {step * k0, step * k1, step * k2};
                const double r2 = xi[0] * xi[0] + xi[1] * xi[1] + xi[2] * xi[2];
                const double r = std::sqrt(r2);
                const double env_u = std::pow(r, expo);
                const double env_w = env_u / r;

                cplx du[3], dw[3];
                if (data.coherent_phases) {
                    for (int c = 0; c < 3; ++c) {
                        du[c] = coherent_u[c];
                        dw[c] = coherent_w[c];
                    }
                } else {
                    for (int c = 0; c < 3; ++c) {
                        du[c] = cplx(gauss(rng), gauss(rng));
                        dw[c] = cplx(gauss(rng), gauss(rng));
                    }
                }
                // project the velocity direction off xi and renormalize so
                // |u_hat| equals the envelope exactly
                cplx dot(0.0, 0.0);
                for (int c = 0; c < 3; ++c) dot += xi[c] * du[c];
                double nu2 = 0.0, nw2 = 0.0;
                for (int c = 0; c < 3; ++c) {
                    du[c] -= xi[c] * dot / r2;
                    nu2 += std::norm(du[c]);
                    nw2 += std::norm(dw[c]);
                }
                if (nu2 < 1e-24 || nw2 < 1e-24) continue;  // degenerate draw, skip the pair
                const double su = env_u / std::sqrt(nu2);
                const double sw = env_w / std::sqrt(nw2);
                for (int c = 0; c < 3; ++c) {
                    s.u[c].mode(k0, k1, k2) = su * du[c];
                    s.u[c].mode(-k0, -k1, -k2) = std::conj(su * du[c]);
                    s.omega[c].mode(k0, k1, k2) = sw * dw[c];
                    s.omega[c].mode(-k0, -k1, -k2) = std::conj(sw * dw[c]);
                }
            }

    scale_to(s.u, data.amplitude);
    if (data.omega_ratio == 0.0)
        scale(s.omega, 0.0);
    else
        scale_to(s.omega, data.omega_ratio * data.amplitude);
    return s;
}

}  // namespace

State make_initial_state(const Grid3& g, const InitialData& data) {
    if (!(data.amplitude >= 0.0))
        throw std::invalid_argument("make_initial_state: amplitude must be nonnegative");
    State s(g);
    switch (data.kind) {
        case InitialData::Kind::taylor_green:
            s = taylor_green(g, data);
            break;
        case InitialData::Kind::kato_oscillating:
            s = kato_oscillating(g, data);
            break;
        case InitialData::Kind::random_slope:
            s = random_slope(g, data);
            break;
    }
    s.u.enforce_hermitian();
    s.omega.enforce_hermitian();
    // the mean vanishes for every generator; drop the sampling crumbs
    for (auto& f : s.u.comp) f.c[0] = 0.0;
    for (auto& f : s.omega.comp) f.c[0] = 0.0;
    return s;
}

}  // namespace mps
