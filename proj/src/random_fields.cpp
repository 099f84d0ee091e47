#include "mps/random_fields.hpp"

#include <cmath>

#include "mps/ops.hpp"

namespace mps {

namespace {

// Fill with unit Gaussians mode by mode in storage order so the result is a
// pure function of the seed, then symmetrize and band-limit. Nyquist planes
// are left empty: k = -n/2 has no conjugate partner on the lattice, so odd
// symbols (gradients, the Leray projector) would break Hermitian symmetry
// there.
void fill_gaussian(SpectralField& f, rng_t& rng, int band_kmax) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    const Grid3& g = f.grid;
    const int n = g.n;
    for (int i0 = 0; i0 < n; ++i0)
        for (int i1 = 0; i1 < n; ++i1)
            for (int i2 = 0; i2 < n; ++i2) {
                const double re = gauss(rng);
                const double im = gauss(rng);
                if (g.mode(i0) == -n / 2 || g.mode(i1) == -n / 2 || g.mode(i2) == -n / 2)
                    continue;
                if (band_kmax >= 0) {
                    const double k2 = double(g.mode(i0)) * g.mode(i0) +
                                      double(g.mode(i1)) * g.mode(i1) +
                                      double(g.mode(i2)) * g.mode(i2);
                    if (k2 > double(band_kmax) * band_kmax) continue;
                }
                f.c[g.flat(i0, i1, i2)] = cplx(re, im);
            }
    f.enforce_hermitian();
    f.c[0] = 0.0;
}

}  // namespace

SpectralField random_real_field(const Grid3& g, rng_t& rng, double amplitude, int band_kmax) {
    SpectralField f(g);
    fill_gaussian(f, rng, band_kmax);
    const double nrm = l2_norm(f);
    if (nrm > 0.0) {
        const double s = amplitude / nrm;
        for (cplx& z : f.c) z *= s;
    }
    return f;
}

VectorField random_vector_field(const Grid3& g, rng_t& rng, double amplitude, int band_kmax) {
    VectorField v(g);
    for (int m = 0; m < 3; ++m) fill_gaussian(v[m], rng, band_kmax);
    const double nrm = l2_norm(v);
    if (nrm > 0.0) scale(v, amplitude / nrm);
    return v;
}

VectorField random_solenoidal_field(const Grid3& g, rng_t& rng, double amplitude, int band_kmax) {
    VectorField v = leray_project(random_vector_field(g, rng, 1.0, band_kmax));
    const double nrm = l2_norm(v);
    if (nrm > 0.0) scale(v, amplitude / nrm);
    return v;
}

}  // namespace mps
