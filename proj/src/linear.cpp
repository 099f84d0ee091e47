#include "mps/linear.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "mps/ops.hpp"

namespace mps {

namespace {

template <typename PerMode>
void for_each_mode(const Grid3& g, PerMode&& fn) {
    const int n = g.n;
    const double step = g.xi_step();
    for (int i0 = 0; i0 < n; ++i0) {
        const double x0 = step * g.mode(i0);
        for (int i1 = 0; i1 < n; ++i1) {
            const double x1 = step * g.mode(i1);
            std::size_t id = g.flat(i0, i1, 0);
            for (int i2 = 0; i2 < n; ++i2, ++id) {
                const double x2 = step * g.mode(i2);
                fn(id, x0, x1, x2);
            }
        }
    }
}

}  // namespace

SymbolMatrix SymbolMatrix::at(double xi_norm, const Viscosities& visc) {
    if (!(xi_norm >= 0.0)) throw std::invalid_argument("SymbolMatrix::at: |xi| must be >= 0");
    const double x2 = xi_norm * xi_norm;
    SymbolMatrix m;
    m.a00 = visc.chi_bar() * x2;
    m.a01 = -2.0 * visc.chi;
    m.a10 = -2.0 * visc.chi * x2;
    m.a11 = visc.mu * x2 + 4.0 * visc.chi;
    return m;
}

double SymbolMatrix::discriminant() const {
    // ((a00-a11)/2)^2 + a01 a10 equals (tr/2)^2 - det without the cancellation;
    // for this family a01 a10 = 4 chi^2 |xi|^2 >= 0, so the value is never negative
    const double h = 0.5 * (a00 - a11);
    return h * h + a01 * a10;
}

EigenPair eigenvalues(double xi_norm, const Viscosities& visc) {
    const SymbolMatrix m = SymbolMatrix::at(xi_norm, visc);
    const double s = 0.5 * m.trace();
    const double disc = m.discriminant();
    EigenPair e;
    if (disc < 0.0) {
        e.real_pair = false;
        e.lambda_plus = e.lambda_minus = s;
        e.imag_part = std::sqrt(-disc);
        return e;
    }
    const double q = std::sqrt(disc);
    e.lambda_plus = s + q;
    // the small rate via det/lambda_plus dodges the s - q cancellation
    e.lambda_minus = e.lambda_plus > 0.0 ? m.determinant() / e.lambda_plus : s - q;
    return e;
}

std::vector<SpectrumRow> spectrum_rows(const Viscosities& visc,
                                       const std::vector<double>& xi_grid) {
    std::vector<SpectrumRow> rows;
    rows.reserve(xi_grid.size());
    for (double xi : xi_grid) {
        if (!(xi > 0.0))
            throw std::invalid_argument("spectrum_rows: xi grid entries must be positive");
        const EigenPair e = eigenvalues(xi, visc);
        SpectrumRow r;
        r.xi = xi;
        r.lambda_plus = e.lambda_plus;
        r.lambda_minus = e.lambda_minus;
        const double x2 = xi * xi;
        r.ratio_lowfreq = e.lambda_minus / (visc.nu * x2);
        r.ratio_highfreq = e.lambda_plus * e.lambda_minus / (visc.chi_bar() * visc.mu * x2 * x2);
        rows.push_back(r);
    }
    return rows;
}

AsymptoticsReport asymptotics_report(const Viscosities& visc,
                                     const std::vector<double>& xi_grid) {
    if (xi_grid.size() < 2)
        throw std::invalid_argument("asymptotics_report: need at least two xi samples");
    const auto [lo_it, hi_it] = std::minmax_element(xi_grid.begin(), xi_grid.end());
    if (!(*lo_it > 0.0))
        throw std::invalid_argument("asymptotics_report: xi grid entries must be positive");
    if (*hi_it / *lo_it < 1e4 * (1.0 - 1e-12))
        throw std::invalid_argument("asymptotics_report: xi grid must span at least 4 decades");

    AsymptoticsReport rep;
    rep.rows = spectrum_rows(visc, xi_grid);

    const EigenPair lo = eigenvalues(*lo_it, visc);
    const EigenPair hi = eigenvalues(*hi_it, visc);
    const double lo2 = *lo_it * *lo_it;
    const double hi2 = *hi_it * *hi_it;
    rep.low_plus_ratio = lo.lambda_plus / (4.0 * visc.chi);
    rep.low_minus_ratio = lo.lambda_minus / (visc.nu * lo2);
    rep.high_prod_ratio = hi.lambda_plus * hi.lambda_minus / (visc.chi_bar() * visc.mu * hi2 * hi2);
    rep.high_sum_ratio = (hi.lambda_plus + hi.lambda_minus) / ((visc.chi_bar() + visc.mu) * hi2);

    auto within = [](double r) { return r >= 0.98 && r <= 1.02; };
    rep.low_ok = within(rep.low_plus_ratio) && within(rep.low_minus_ratio);
    rep.high_ok = within(rep.high_prod_ratio) && within(rep.high_sum_ratio);
    return rep;
}

ModePropagator mode_propagator(double t, double xi_norm, const Viscosities& visc) {
    const SymbolMatrix m = SymbolMatrix::at(xi_norm, visc);
    const double s = 0.5 * m.trace();
    const double disc = m.discriminant();
    const double z = t * t * disc;

    // exp(-tA) = C I + S (s I - A) with C = e^{-ts} cosh(t sqrt(disc)) and
    // S = e^{-ts} sinh(t sqrt(disc))/sqrt(disc); three branches keep every
    // regime (split eigenvalues, near-double root, complex pair) stable
    double C, S;
    if (std::abs(z) < 1e-4) {
        const double ets = std::exp(-t * s);
        C = ets * (1.0 + z / 2.0 + z * z / 24.0 + z * z * z / 720.0);
        S = t * ets * (1.0 + z / 6.0 + z * z / 120.0 + z * z * z / 5040.0);
    } else if (disc > 0.0) {
        const double q = std::sqrt(disc);
        const double ep = std::exp(-t * (s + q));
        const double em = std::exp(-t * (s - q));
        C = 0.5 * (ep + em);
        S = (em - ep) / (2.0 * q);
    } else {
        const double q = std::sqrt(-disc);
        const double ets = std::exp(-t * s);
        C = ets * std::cos(t * q);
        S = ets * std::sin(t * q) / q;
    }

    ModePropagator p;
    p.p00 = C + S * (s - m.a00);
    p.p01 = -S * m.a01;
    p.p10 = -S * m.a10;
    p.p11 = C + S * (s - m.a11);
    p.q_factor = std::exp(-t * ((visc.mu + visc.kappa) * xi_norm * xi_norm + 4.0 * visc.chi));
    return p;
}

State linear_propagate(const State& s, double t, const Viscosities& visc) {
    const Grid3& g = s.grid();
    if (divergence_error(s.u) > div_free_tol)
        throw std::invalid_argument("linear_propagate: u must be divergence-free");

    State out(g);
    out.time = s.time + t;
    const double mean_factor = std::exp(-4.0 * visc.chi * t);
    const cplx i_unit(0.0, 1.0);

    for_each_mode(g, [&](std::size_t id, double x0, double x1, double x2) {
        const cplx u0 = s.u[0].c[id], u1 = s.u[1].c[id], u2 = s.u[2].c[id];
        const cplx w0 = s.omega[0].c[id], w1 = s.omega[1].c[id], w2 = s.omega[2].c[id];
        const double r2 = x0 * x0 + x1 * x1 + x2 * x2;
        if (r2 == 0.0) {
            out.u[0].c[id] = u0;
            out.u[1].c[id] = u1;
            out.u[2].c[id] = u2;
            out.omega[0].c[id] = mean_factor * w0;
            out.omega[1].c[id] = mean_factor * w1;
            out.omega[2].c[id] = mean_factor * w2;
            return;
        }

        // gradient part of the rotation decays on its own
        const cplx qdot = (x0 * w0 + x1 * w1 + x2 * w2) / r2;
        const cplx q0 = x0 * qdot, q1 = x1 * qdot, q2 = x2 * qdot;

        // curl of the rotation (the solenoidal part contributes all of it)
        const cplx o0 = i_unit * (x1 * w2 - x2 * w1);
        const cplx o1 = i_unit * (x2 * w0 - x0 * w2);
        const cplx o2 = i_unit * (x0 * w1 - x1 * w0);

        const ModePropagator pr = mode_propagator(t, std::sqrt(r2), visc);

        const cplx nu0 = pr.p00 * u0 + pr.p01 * o0;
        const cplx nu1 = pr.p00 * u1 + pr.p01 * o1;
        const cplx nu2 = pr.p00 * u2 + pr.p01 * o2;
        const cplx no0 = pr.p10 * u0 + pr.p11 * o0;
        const cplx no1 = pr.p10 * u1 + pr.p11 * o1;
        const cplx no2 = pr.p10 * u2 + pr.p11 * o2;

        // invert curl on the solenoidal part: P omega = i xi x W / |xi|^2
        const cplx np0 = i_unit * (x1 * no2 - x2 * no1) / r2;
        const cplx np1 = i_unit * (x2 * no0 - x0 * no2) / r2;
        const cplx np2 = i_unit * (x0 * no1 - x1 * no0) / r2;

        out.u[0].c[id] = nu0;
        out.u[1].c[id] = nu1;
        out.u[2].c[id] = nu2;
        out.omega[0].c[id] = np0 + pr.q_factor * q0;
        out.omega[1].c[id] = np1 + pr.q_factor * q1;
        out.omega[2].c[id] = np2 + pr.q_factor * q2;
    });

    for (int m = 0; m < 3; ++m) {
        out.u[m].reality = s.u[m].reality;
        out.omega[m].reality = s.omega[m].reality;
    }
    return out;
}

VectorField effective_velocity(const State& s, const Viscosities& visc) {
    if (!visc.is_normalized())
        throw std::invalid_argument(
            "effective_velocity: defined for the normalized viscosity preset only");
    VectorField r = curl(s.omega);
    axpy(r, 0.5, apply_symbol(s.u, Symbol::laplacian()));
    return r;
}

KernelCheck damped_kernel_check(const DyadicPartition& part, const SpectralField& f,
                                int j, const std::vector<double>& t_grid, double p) {
    if (t_grid.empty())
        throw std::invalid_argument("damped_kernel_check: t grid must be nonempty");
    for (double t : t_grid)
        if (!(t >= 0.0))
            throw std::invalid_argument("damped_kernel_check: t grid entries must be >= 0");

    const SpectralField block = dyadic_block(part, f, j);
    const double denom = lp_norm(block, p);
    if (denom == 0.0)
        throw std::invalid_argument("damped_kernel_check: block carries no energy");

    // worst-case annulus decay exp(-(c 4^j + 2) t), c = (3/4)^2, divided out of
    // the multiplier up front: the flat 2 cancels and the remaining exponent
    // -t(|xi|^2 - c 4^j) is <= 0 on the block support, so nothing underflows
    // until the ratio itself is genuinely tiny
    const double cj = 0.5625 * std::ldexp(1.0, 2 * j);

    KernelCheck out;
    out.j = j;
    out.p = p;
    out.worst_ratio = 0.0;
    out.worst_t = t_grid.front();
    SpectralField damped(block.grid);
    damped.reality = block.reality;
    for (double t : t_grid) {
        for_each_mode(block.grid, [&](std::size_t id, double x0, double x1, double x2) {
            const cplx z = block.c[id];
            if (z == cplx(0.0, 0.0)) {
                damped.c[id] = 0.0;
                return;
            }
            const double r2 = x0 * x0 + x1 * x1 + x2 * x2;
            damped.c[id] = z * std::exp(-t * (r2 - cj));
        });
        const double ratio = lp_norm(damped, p) / denom;
        if (ratio > out.worst_ratio) {
            out.worst_ratio = ratio;
            out.worst_t = t;
        }
    }
    return out;
}

}  // namespace mps
