#include "mps/ops.hpp"

#include <cmath>
#include <stdexcept>

#include "mps/transform.hpp"

namespace mps {

namespace {

// evaluate a scalar (radial-in-xi) multiplier; vector symbols are handled separately
double scalar_multiplier(Symbol::Kind kind, double param, double x0, double x1, double x2) {
    const double r2 = x0 * x0 + x1 * x1 + x2 * x2;
    switch (kind) {
        case Symbol::Kind::laplacian:
            return -r2;
        case Symbol::Kind::heat:
            return std::exp(-param * r2);
        case Symbol::Kind::lambda_pow:
            if (r2 == 0.0) return param > 0.0 ? 0.0 : 1.0;  // s<0 at 0 is excluded by the caller
            return std::pow(std::sqrt(r2), param);
        case Symbol::Kind::gevrey_l1:
            return std::exp(param * (std::abs(x0) + std::abs(x1) + std::abs(x2)));
        case Symbol::Kind::gevrey_l2:
            return std::exp(param * std::sqrt(r2));
        default:
            throw std::logic_error("scalar_multiplier: vector symbol");
    }
}

void validate_symbol(const Grid3& g, const Symbol& s) {
    switch (s.kind) {
        case Symbol::Kind::heat:
            if (s.param < 0.0) throw std::invalid_argument("apply_symbol: heat requires t >= 0");
            break;
        case Symbol::Kind::gevrey_l1:
            if (s.param * g.xi_max_l1() > gevrey_exponent_guard)
                throw std::invalid_argument("apply_symbol: gevrey_l1 overflow guard tripped (a*|xi|_1 max > 600)");
            break;
        case Symbol::Kind::gevrey_l2:
            if (s.param * g.xi_max() > gevrey_exponent_guard)
                throw std::invalid_argument("apply_symbol: gevrey_l2 overflow guard tripped (a*|xi| max > 600)");
            break;
        default:
            break;
    }
}

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

SpectralField apply_symbol(const SpectralField& f, const Symbol& s) {
    if (s.kind == Symbol::Kind::curl || s.kind == Symbol::Kind::grad_div)
        throw std::invalid_argument("apply_symbol: curl/grad_div act on vector fields");
    validate_symbol(f.grid, s);
    if (s.kind == Symbol::Kind::lambda_pow && s.param < 0.0) {
        if (std::abs(f.c[0]) > 1e-14 * std::max(f.max_abs(), 1e-300))
            throw std::invalid_argument("homogeneous multiplier undefined at zero mode");
    }
    SpectralField out(f.grid);
    out.reality = f.reality;
    for_each_mode(f.grid, [&](std::size_t id, double x0, double x1, double x2) {
        out.c[id] = f.c[id] * scalar_multiplier(s.kind, s.param, x0, x1, x2);
    });
    if (s.kind == Symbol::Kind::lambda_pow && s.param < 0.0) out.c[0] = 0.0;
    return out;
}

VectorField apply_symbol(const VectorField& v, const Symbol& s) {
    if (s.kind == Symbol::Kind::curl) return curl(v);
    if (s.kind == Symbol::Kind::grad_div) {
        VectorField out(v.grid());
        for_each_mode(v.grid(), [&](std::size_t id, double x0, double x1, double x2) {
            const cplx d = x0 * v[0].c[id] + x1 * v[1].c[id] + x2 * v[2].c[id];
            out[0].c[id] = -x0 * d;
            out[1].c[id] = -x1 * d;
            out[2].c[id] = -x2 * d;
        });
        return out;
    }
    VectorField out;
    for (int m = 0; m < 3; ++m) out.comp[m] = apply_symbol(v[m], s);
    return out;
}

VectorField leray_project(const VectorField& v) {
    VectorField out(v.grid());
    for_each_mode(v.grid(), [&](std::size_t id, double x0, double x1, double x2) {
        const double r2 = x0 * x0 + x1 * x1 + x2 * x2;
        if (r2 == 0.0) {
            out[0].c[id] = v[0].c[id];
            out[1].c[id] = v[1].c[id];
            out[2].c[id] = v[2].c[id];
            return;
        }
        const cplx d = (x0 * v[0].c[id] + x1 * v[1].c[id] + x2 * v[2].c[id]) / r2;
        out[0].c[id] = v[0].c[id] - x0 * d;
        out[1].c[id] = v[1].c[id] - x1 * d;
        out[2].c[id] = v[2].c[id] - x2 * d;
    });
    return out;
}

HelmholtzParts helmholtz_split(const VectorField& w) {
    HelmholtzParts parts{VectorField(w.grid()), VectorField(w.grid())};
    for_each_mode(w.grid(), [&](std::size_t id, double x0, double x1, double x2) {
        const double r2 = x0 * x0 + x1 * x1 + x2 * x2;
        if (r2 == 0.0) {
            // constants are both divergence- and curl-free; carried by q_part,
            // matching the uniform damping of the mean in the linear flow
            for (int m = 0; m < 3; ++m) {
                parts.q_part[m].c[id] = w[m].c[id];
                parts.p_part[m].c[id] = 0.0;
            }
            return;
        }
        const cplx d = (x0 * w[0].c[id] + x1 * w[1].c[id] + x2 * w[2].c[id]) / r2;
        const cplx q0 = x0 * d, q1 = x1 * d, q2 = x2 * d;
        parts.q_part[0].c[id] = q0;
        parts.q_part[1].c[id] = q1;
        parts.q_part[2].c[id] = q2;
        parts.p_part[0].c[id] = w[0].c[id] - q0;
        parts.p_part[1].c[id] = w[1].c[id] - q1;
        parts.p_part[2].c[id] = w[2].c[id] - q2;
    });
    return parts;
}

VectorField gradient(const SpectralField& f) {
    VectorField out(f.grid);
    const cplx i_unit(0.0, 1.0);
    for_each_mode(f.grid, [&](std::size_t id, double x0, double x1, double x2) {
        const cplx z = i_unit * f.c[id];
        out[0].c[id] = x0 * z;
        out[1].c[id] = x1 * z;
        out[2].c[id] = x2 * z;
    });
    return out;
}

SpectralField divergence(const VectorField& v) {
    SpectralField out(v.grid());
    const cplx i_unit(0.0, 1.0);
    for_each_mode(v.grid(), [&](std::size_t id, double x0, double x1, double x2) {
        out.c[id] = i_unit * (x0 * v[0].c[id] + x1 * v[1].c[id] + x2 * v[2].c[id]);
    });
    return out;
}

VectorField curl(const VectorField& v) {
    VectorField out(v.grid());
    const cplx i_unit(0.0, 1.0);
    for_each_mode(v.grid(), [&](std::size_t id, double x0, double x1, double x2) {
        out[0].c[id] = i_unit * (x1 * v[2].c[id] - x2 * v[1].c[id]);
        out[1].c[id] = i_unit * (x2 * v[0].c[id] - x0 * v[2].c[id]);
        out[2].c[id] = i_unit * (x0 * v[1].c[id] - x1 * v[0].c[id]);
    });
    return out;
}

namespace {

double lp_of_samples(const std::vector<double>& mag, double r, std::size_t count) {
    if (r < 1.0) throw std::invalid_argument("lp_norm: r must be >= 1");
    if (std::isinf(r)) {
        double m = 0.0;
        for (double v : mag) m = std::max(m, v);
        return m;
    }
    // compensated accumulation keeps the reduction deterministic and accurate
    double sum = 0.0, comp = 0.0;
    for (double v : mag) {
        const double term = std::pow(v, r);
        const double y = term - comp;
        const double t = sum + y;
        comp = (t - sum) - y;
        sum = t;
    }
    return std::pow(sum / static_cast<double>(count), 1.0 / r);
}

}  // namespace

double lp_norm(const SpectralField& f, double r) {
    if (r < 1.0) throw std::invalid_argument("lp_norm: r must be >= 1");
    std::vector<cplx> phys = to_physical(f);
    std::vector<double> mag(phys.size());
    for (std::size_t i = 0; i < phys.size(); ++i) mag[i] = std::abs(phys[i]);
    return lp_of_samples(mag, r, f.grid.size());
}

double lp_norm(const VectorField& v, double r) {
    if (r < 1.0) throw std::invalid_argument("lp_norm: r must be >= 1");
    std::vector<cplx> p0 = to_physical(v[0]);
    std::vector<cplx> p1 = to_physical(v[1]);
    std::vector<cplx> p2 = to_physical(v[2]);
    std::vector<double> mag(p0.size());
    for (std::size_t i = 0; i < p0.size(); ++i)
        mag[i] = std::sqrt(std::norm(p0[i]) + std::norm(p1[i]) + std::norm(p2[i]));
    return lp_of_samples(mag, r, v.grid().size());
}

double l2_norm(const SpectralField& f) {
    double sum = 0.0, comp = 0.0;
    for (const cplx& z : f.c) {
        const double y = std::norm(z) - comp;
        const double t = sum + y;
        comp = (t - sum) - y;
        sum = t;
    }
    return std::sqrt(sum);
}

double l2_norm(const VectorField& v) {
    const double a = l2_norm(v[0]), b = l2_norm(v[1]), c = l2_norm(v[2]);
    return std::sqrt(a * a + b * b + c * c);
}

cplx l2_inner(const SpectralField& a, const SpectralField& b) {
    if (a.grid != b.grid) throw std::invalid_argument("l2_inner: grids differ");
    cplx sum(0.0, 0.0);
    for (std::size_t i = 0; i < a.c.size(); ++i) sum += a.c[i] * std::conj(b.c[i]);
    return sum;
}

void dealias_truncate(SpectralField& f) {
    const Grid3& g = f.grid;
    const int kmax = g.dealias_kmax();
    const int n = g.n;
    for (int i0 = 0; i0 < n; ++i0) {
        const bool kill0 = std::abs(g.mode(i0)) > kmax;
        for (int i1 = 0; i1 < n; ++i1) {
            const bool kill01 = kill0 || std::abs(g.mode(i1)) > kmax;
            std::size_t id = g.flat(i0, i1, 0);
            for (int i2 = 0; i2 < n; ++i2, ++id) {
                if (kill01 || std::abs(g.mode(i2)) > kmax) f.c[id] = 0.0;
            }
        }
    }
}

void dealias_truncate(VectorField& v) {
    for (auto& f : v.comp) dealias_truncate(f);
}

bool is_dealias_band_limited(const SpectralField& f, double rel_tol) {
    const Grid3& g = f.grid;
    const int kmax = g.dealias_kmax();
    const double tol = rel_tol * std::max(f.max_abs(), 1e-300);
    const int n = g.n;
    for (int i0 = 0; i0 < n; ++i0)
        for (int i1 = 0; i1 < n; ++i1)
            for (int i2 = 0; i2 < n; ++i2) {
                if (std::abs(g.mode(i0)) <= kmax && std::abs(g.mode(i1)) <= kmax &&
                    std::abs(g.mode(i2)) <= kmax)
                    continue;
                if (std::abs(f.c[g.flat(i0, i1, i2)]) > tol) return false;
            }
    return true;
}

void axpy(VectorField& y, double a, const VectorField& x) {
    for (int m = 0; m < 3; ++m)
        for (std::size_t i = 0; i < y[m].c.size(); ++i) y[m].c[i] += a * x[m].c[i];
}

void scale(VectorField& y, double a) {
    for (int m = 0; m < 3; ++m)
        for (cplx& z : y[m].c) z *= a;
}

}  // namespace mps
