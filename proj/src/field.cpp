#include "mps/field.hpp"

namespace mps {

void SpectralField::enforce_hermitian() {
    const int n = grid.n;
    for (int i0 = 0; i0 < n; ++i0) {
        const int m0 = (n - i0) % n;
        for (int i1 = 0; i1 < n; ++i1) {
            const int m1 = (n - i1) % n;
            for (int i2 = 0; i2 < n; ++i2) {
                const int m2 = (n - i2) % n;
                const std::size_t a = grid.flat(i0, i1, i2);
                const std::size_t b = grid.flat(m0, m1, m2);
                if (a > b) continue;
                const cplx za = c[a];
                const cplx zb = c[b];
                const cplx avg = 0.5 * (za + std::conj(zb));
                c[a] = avg;
                c[b] = std::conj(avg);
            }
        }
    }
    reality = true;
}

double SpectralField::hermitian_error() const {
    const int n = grid.n;
    double worst = 0.0;
    for (int i0 = 0; i0 < n; ++i0) {
        const int m0 = (n - i0) % n;
        for (int i1 = 0; i1 < n; ++i1) {
            const int m1 = (n - i1) % n;
            for (int i2 = 0; i2 < n; ++i2) {
                const int m2 = (n - i2) % n;
                const std::size_t a = grid.flat(i0, i1, i2);
                const std::size_t b = grid.flat(m0, m1, m2);
                if (a > b) continue;
                worst = std::max(worst, std::abs(c[a] - std::conj(c[b])));
            }
        }
    }
    return worst;
}

double divergence_error(const VectorField& u) {
    const Grid3& g = u.grid();
    const int n = g.n;
    const double step = g.xi_step();
    double worst = 0.0;
    double amp = 0.0;
    for (int i0 = 0; i0 < n; ++i0) {
        const double x0 = step * g.mode(i0);
        for (int i1 = 0; i1 < n; ++i1) {
            const double x1 = step * g.mode(i1);
            for (int i2 = 0; i2 < n; ++i2) {
                const double x2 = step * g.mode(i2);
                const std::size_t id = g.flat(i0, i1, i2);
                const cplx div = x0 * u[0].c[id] + x1 * u[1].c[id] + x2 * u[2].c[id];
                worst = std::max(worst, std::abs(div));
                amp = std::max(amp, std::max(std::abs(u[0].c[id]),
                                             std::max(std::abs(u[1].c[id]), std::abs(u[2].c[id]))));
            }
        }
    }
    if (amp == 0.0) return 0.0;
    return worst / amp;
}

bool is_divergence_free(const VectorField& u, double tol) {
    return divergence_error(u) <= tol;
}

}  // namespace mps
