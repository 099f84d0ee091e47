#include "mps/gevrey.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <random>
#include <stdexcept>
#include <vector>

#include "mps/ops.hpp"
#include "mps/random_fields.hpp"

namespace mps {

namespace {

Symbol weight_symbol(const GevreyNorm& gn) {
    return gn.flavor == GevreyNorm::Flavor::l1 ? Symbol::gevrey_l1(gn.a)
                                               : Symbol::gevrey_l2(gn.a);
}

void validate_gevrey(const GevreyNorm& gn) {
    if (gn.a < 0.0) throw std::invalid_argument("gevrey_norm: radius a must be >= 0");
    if (!gn.besov && gn.r < 1.0) throw std::invalid_argument("gevrey_norm: r must be >= 1");
}

template <typename Field>
double gevrey_norm_impl(const DyadicPartition* part, const Field& f, const GevreyNorm& gn) {
    validate_gevrey(gn);
    // apply_symbol trips its own overflow guard before touching the data
    const Field wf = gn.a == 0.0 ? f : apply_symbol(f, weight_symbol(gn));
    if (gn.besov) {
        if (!part)
            throw std::invalid_argument("gevrey_norm: a besov inner norm needs a partition");
        return besov_norm(*part, wf, *gn.besov);
    }
    return lp_norm(wf, gn.r);
}

// One octave shell per j: max |f_hat| over 2^j <= |xi| < 2^{j+1} together
// with the |xi| where the max is attained (the fit abscissa).
struct ShellMax {
    double xi = 0.0;
    double mag = 0.0;
    bool seen = false;
};

template <typename ModeMag>
RadiusFit radius_fit_impl(const Grid3& g, int j_lo, int j_hi, ModeMag&& mag_at) {
    if (j_lo > j_hi) throw std::invalid_argument("radius_fit: empty shell range");
    std::vector<ShellMax> shells(static_cast<std::size_t>(j_hi - j_lo + 1));
    const double step = g.xi_step();
    const int n = g.n;
    for (int i0 = 0; i0 < n; ++i0)
        for (int i1 = 0; i1 < n; ++i1)
            for (int i2 = 0; i2 < n; ++i2) {
                const double x0 = step * g.mode(i0);
                const double x1 = step * g.mode(i1);
                const double x2 = step * g.mode(i2);
                const double r = std::sqrt(x0 * x0 + x1 * x1 + x2 * x2);
                if (r <= 0.0) continue;
                const int j = static_cast<int>(std::floor(std::log2(r)));
                if (j < j_lo || j > j_hi) continue;
                const double m = mag_at(i0, i1, i2);
                ShellMax& s = shells[static_cast<std::size_t>(j - j_lo)];
                if (m > s.mag) {
                    s.mag = m;
                    s.xi = r;
                    s.seen = true;
                }
            }

    std::vector<double> xs, ys;
    double lo = 0.0, hi = 0.0;
    for (const ShellMax& s : shells)
        if (s.seen && s.mag > 0.0) {
            xs.push_back(s.xi);
            ys.push_back(std::log(s.mag));
            if (xs.size() == 1)
                lo = hi = s.mag;
            else {
                lo = std::min(lo, s.mag);
                hi = std::max(hi, s.mag);
            }
        }
    if (xs.size() < 4)
        throw std::invalid_argument("radius_fit: need at least 4 populated shells");
    if (hi - lo <= 1e-14 * hi)
        throw std::domain_error("radius_fit: shell maxima are all equal, no decay to fit");

    const auto count = static_cast<double>(xs.size());
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        mx += xs[i];
        my += ys[i];
    }
    mx /= count;
    my /= count;
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sxx += (xs[i] - mx) * (xs[i] - mx);
        sxy += (xs[i] - mx) * (ys[i] - my);
    }
    const double slope = sxy / sxx;
    const double intercept = my - slope * mx;
    double ss = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double e = ys[i] - (intercept + slope * xs[i]);
        ss += e * e;
    }

    RadiusFit fit;
    fit.radius_estimate = std::max(0.0, -slope);
    fit.j_lo = j_lo;
    fit.j_hi = j_hi;
    fit.shells_used = static_cast<int>(xs.size());
    fit.residual = std::sqrt(ss / count);
    return fit;
}

}  // namespace

double gevrey_norm(const SpectralField& f, const GevreyNorm& gn) {
    return gevrey_norm_impl(nullptr, f, gn);
}

double gevrey_norm(const VectorField& v, const GevreyNorm& gn) {
    return gevrey_norm_impl(nullptr, v, gn);
}

double gevrey_norm(const DyadicPartition& part, const SpectralField& f, const GevreyNorm& gn) {
    return gevrey_norm_impl(&part, f, gn);
}

double gevrey_norm(const DyadicPartition& part, const VectorField& v, const GevreyNorm& gn) {
    return gevrey_norm_impl(&part, v, gn);
}

RadiusFit radius_fit(const SpectralField& f, int j_lo, int j_hi) {
    return radius_fit_impl(f.grid, j_lo, j_hi, [&](int i0, int i1, int i2) {
        return std::abs(f.c[f.grid.flat(i0, i1, i2)]);
    });
}

RadiusFit radius_fit(const VectorField& v, int j_lo, int j_hi) {
    return radius_fit_impl(v.grid(), j_lo, j_hi, [&](int i0, int i1, int i2) {
        const std::size_t idx = v.grid().flat(i0, i1, i2);
        const double a0 = std::abs(v[0].c[idx]);
        const double a1 = std::abs(v[1].c[idx]);
        const double a2 = std::abs(v[2].c[idx]);
        return std::sqrt(a0 * a0 + a1 * a1 + a2 * a2);
    });
}

double smoothing_constant(double m) {
    if (m <= 0.0) throw std::invalid_argument("smoothing_constant: m must be positive");
    return 1.0 / (1.0 - std::pow(2.0, -m)) +
           std::pow(8.0 * m, m) / (1.0 - std::exp(-1.0 / 8.0));
}

SmoothingReport smoothing_constant_check(const Grid3& g, double m, const std::vector<double>& t_grid,
                                         int trials, double s, double p, int j0,
                                         std::uint64_t seed, bool high_freq) {
    if (m <= 0.0) throw std::invalid_argument("smoothing_constant_check: m must be positive");
    if (trials <= 0) throw std::invalid_argument("smoothing_constant_check: trials must be positive");
    for (double t : t_grid)
        if (t <= 0.0) throw std::invalid_argument("smoothing_constant_check: t must be positive");

    SmoothingReport rep;
    rep.m = m;
    rep.c_m = smoothing_constant(m);
    rep.trials = trials;
    rep.high_freq = high_freq;

    const DyadicPartition part(g);
    const BesovSpec lhs_spec(s, p, 1.0, j0);
    const BesovSpec rhs_spec(s, p, std::numeric_limits<double>::infinity(), j0);
    rng_t rng = make_rng(seed);

    double worst = 0.0, worst_t = 0.0;
    for (int trial = 0; trial < trials; ++trial) {
        const SpectralField f = random_real_field(g, rng);
        const SpectralField lm = apply_symbol(f, Symbol::lambda_pow(m));
        const double lhs = high_freq ? besov_norm_high(part, lm, lhs_spec)
                                     : besov_norm_low(part, lm, lhs_spec);
        for (double t : t_grid) {
            const SpectralField wf = apply_symbol(f, Symbol::gevrey_l1(std::sqrt(t)));
            double rhs;
            if (high_freq)
                rhs = besov_norm_high(part, wf, rhs_spec) *
                      std::exp(-std::sqrt(t) * std::pow(2.0, j0) / 4.0);
            else
                rhs = besov_norm_low(part, wf, rhs_spec);
            const double bound = rep.c_m * std::pow(t, -0.5 * m) * rhs;
            if (bound <= 0.0) continue;  // empty side, nothing to compare
            const double ratio = lhs / bound;
            if (ratio > worst) {
                worst = ratio;
                worst_t = t;
            }
        }
    }
    rep.worst_ratio = worst;
    rep.worst_t = worst_t;
    rep.ok = worst <= 1.0;
    return rep;
}

EquivalenceReport multiplier_equiv_check(const Grid3& g, const std::vector<double>& alpha_bars,
                                         int j_lo, int j_hi, int trials, double p,
                                         std::uint64_t seed) {
    if (j_lo > j_hi) throw std::invalid_argument("multiplier_equiv_check: empty block range");
    if (trials <= 0) throw std::invalid_argument("multiplier_equiv_check: trials must be positive");

    EquivalenceReport rep;
    rep.c1 = 0.9 / std::sqrt(3.0);
    rep.c2 = 1.1;
    rep.sandwich_ok = true;

    const DyadicPartition part(g);
    rng_t rng = make_rng(seed);

    for (int j = j_lo; j <= j_hi; ++j) {
        if (!part.contains(j))
            throw std::invalid_argument("multiplier_equiv_check: block level outside the grid");
        double blk_min_lower = 1.0, blk_max_upper = 1.0;
        for (int trial = 0; trial < trials; ++trial) {
            const SpectralField base = random_real_field(g, rng);
            const SpectralField f = dyadic_block(part, base, j);
            for (double ab : alpha_bars) {
                if (ab < 0.0)
                    throw std::invalid_argument("multiplier_equiv_check: alpha must be >= 0");
                // scale the weight with the block so e^{alpha |xi|} spans the
                // same dynamic range at every level
                const double alpha = ab * std::pow(2.0, -j);
                const double ne = lp_norm(apply_symbol(f, Symbol::gevrey_l2(alpha)), p);
                const double n1 = lp_norm(apply_symbol(f, Symbol::gevrey_l1(rep.c1 * alpha)), p);
                const double n2 = lp_norm(apply_symbol(f, Symbol::gevrey_l1(rep.c2 * alpha)), p);
                if (ne <= 0.0) continue;  // degenerate draw
                if (!(n1 <= ne * (1.0 + 1e-12) && ne <= n2 * (1.0 + 1e-12)))
                    rep.sandwich_ok = false;
                if (ab > 0.0) {
                    blk_min_lower = std::min(blk_min_lower, ne / n1);
                    blk_max_upper = std::max(blk_max_upper, ne / n2);
                }
            }
        }
        rep.blocks.push_back(j);
        rep.block_min_lower.push_back(blk_min_lower);
        rep.block_max_upper.push_back(blk_max_upper);
        rep.min_lower_ratio = std::min(rep.min_lower_ratio, blk_min_lower);
        rep.max_upper_ratio = std::max(rep.max_upper_ratio, blk_max_upper);
    }
    return rep;
}

namespace {

double vec3_len(const double v[3]) {
    return std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]);
}

// The full sampled function: symbol times both annulus cutoffs. gamma and
// the c's ride along so the finite differences see the exact integrand.
struct SymbolAt {
    double gamma, c, c1, c2;
    double scale_lo, scale_hi;  // 2^{-j_lo}, 2^{-j_hi}

    double operator()(const double xi[3], const double eta[3]) const {
        double sum[3] = {xi[0] + eta[0], xi[1] + eta[1], xi[2] + eta[2]};
        const double e = c * vec3_len(sum) - c1 * vec3_len(xi) - c2 * vec3_len(eta);
        return std::exp(gamma * e) * shell_profile(scale_hi * vec3_len(xi)) *
               shell_profile(scale_lo * vec3_len(eta));
    }

    double exponent(const double xi[3], const double eta[3]) const {
        double sum[3] = {xi[0] + eta[0], xi[1] + eta[1], xi[2] + eta[2]};
        return c * vec3_len(sum) - c1 * vec3_len(xi) - c2 * vec3_len(eta);
    }
};

}  // namespace

BilinearReport bilinear_symbol_check(double gamma, double c, double c1, double c2, int j_lo,
                                     int j_hi, int sample_density, std::uint64_t seed) {
    if (j_lo > j_hi - 2)
        throw std::invalid_argument("bilinear_symbol_check: needs j_lo <= j_hi - 2");
    if (gamma < 0.0) throw std::invalid_argument("bilinear_symbol_check: gamma must be >= 0");
    if (sample_density <= 0)
        throw std::invalid_argument("bilinear_symbol_check: sample_density must be positive");

    BilinearReport rep;
    rep.gamma = gamma;
    rep.c = c;
    rep.c1 = c1;
    rep.c2 = c2;
    rep.j_lo = j_lo;
    rep.j_hi = j_hi;
    rep.samples = sample_density;
    rep.min_margin = std::numeric_limits<double>::infinity();

    const double rlo = std::pow(2.0, j_lo);
    const double rhi = std::pow(2.0, j_hi);
    SymbolAt sym{gamma, c, c1, c2, 1.0 / rlo, 1.0 / rhi};

    rng_t rng = make_rng(seed);
    std::uniform_real_distribution<double> rad(0.75, 8.0 / 3.0);
    std::normal_distribution<double> gauss(0.0, 1.0);

    auto draw_point = [&](double radius_scale, double out[3]) {
        double d[3];
        double len = 0.0;
        do {
            for (double& x : d) x = gauss(rng);
            len = vec3_len(d);
        } while (len < 1e-12);
        const double r = rad(rng) * radius_scale;
        for (int i = 0; i < 3; ++i) out[i] = d[i] * (r / len);
    };

    for (int sample = 0; sample < sample_density; ++sample) {
        double xi[3], eta[3];
        draw_point(rhi, xi);
        draw_point(rlo, eta);

        const double exponent = sym.exponent(xi, eta);
        const double eta_len = vec3_len(eta);
        const double margin = -exponent - eta_len;
        rep.min_margin = std::min(rep.min_margin, margin);
        if (margin < -1e-9 * (1.0 + eta_len)) {
            char msg[192];
            std::snprintf(msg, sizeof(msg),
                          "bilinear_symbol_check: exponent bound fails at xi=(%.4g,%.4g,%.4g) "
                          "eta=(%.4g,%.4g,%.4g): %.4g > -|eta| (raise c2)",
                          xi[0], xi[1], xi[2], eta[0], eta[1], eta[2], exponent);
            throw std::domain_error(msg);
        }

        // centered differences, stepping each of the six coordinates; the
        // step follows the annulus scale so the stencil stays on-support
        const double hx = 1e-6 * rhi;
        const double he = 1e-6 * rlo;
        double gxi[3], geta[3];
        for (int i = 0; i < 3; ++i) {
            double a[3] = {xi[0], xi[1], xi[2]}, b[3] = {xi[0], xi[1], xi[2]};
            a[i] += hx;
            b[i] -= hx;
            gxi[i] = (sym(a, eta) - sym(b, eta)) / (2.0 * hx);
        }
        for (int i = 0; i < 3; ++i) {
            double a[3] = {eta[0], eta[1], eta[2]}, b[3] = {eta[0], eta[1], eta[2]};
            a[i] += he;
            b[i] -= he;
            geta[i] = (sym(xi, a) - sym(xi, b)) / (2.0 * he);
        }
        rep.worst_xi_constant = std::max(rep.worst_xi_constant, vec3_len(gxi) * vec3_len(xi));
        rep.worst_eta_constant = std::max(rep.worst_eta_constant, vec3_len(geta) * eta_len);
    }
    return rep;
}

}  // namespace mps
