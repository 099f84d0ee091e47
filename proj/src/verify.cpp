#include "mps/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>
#include <stdexcept>

#include "mps/dyadic.hpp"
#include "mps/gevrey.hpp"
#include "mps/grid.hpp"
#include "mps/initial_data.hpp"
#include "mps/linear.hpp"
#include "mps/ops.hpp"
#include "mps/random_fields.hpp"
#include "mps/solver.hpp"
#include "mps/transform.hpp"

namespace mps {

VerifySuite parse_suite(const std::string& name) {
    if (name == "core") return VerifySuite::core;
    if (name == "lp") return VerifySuite::lp;
    if (name == "linear") return VerifySuite::linear;
    if (name == "solver") return VerifySuite::solver;
    if (name == "gevrey") return VerifySuite::gevrey;
    if (name == "all") return VerifySuite::all;
    throw std::invalid_argument("unknown verify suite: " + name);
}

std::string suite_name(VerifySuite suite) {
    switch (suite) {
        case VerifySuite::core: return "core";
        case VerifySuite::lp: return "lp";
        case VerifySuite::linear: return "linear";
        case VerifySuite::solver: return "solver";
        case VerifySuite::gevrey: return "gevrey";
        case VerifySuite::all: return "all";
    }
    throw std::invalid_argument("unknown verify suite value");
}

namespace {

VerifyCheck make_check(const std::string& name, double measured, double bound,
                       const std::string& detail = "") {
    VerifyCheck c;
    c.name = name;
    c.measured = measured;
    c.bound = bound;
    c.pass = measured <= bound;
    c.detail = detail;
    return c;
}

double rel_max_diff(const SpectralField& a, const SpectralField& b) {
    double m = 0.0, scale = 0.0;
    for (std::size_t i = 0; i < a.c.size(); ++i) {
        m = std::max(m, std::abs(a.c[i] - b.c[i]));
        scale = std::max(scale, std::abs(a.c[i]));
    }
    return scale > 0.0 ? m / scale : m;
}

void check_core(std::vector<VerifyCheck>& out, const VerifyOptions& opt) {
    const Grid3 g(opt.n, 2.0 * pi);
    rng_t rng = make_rng(opt.seed);
    const SpectralField f = random_real_field(g, rng);

    const SpectralField back = to_spectral(g, to_physical(f));
    out.push_back(make_check("core/fft_round_trip", rel_max_diff(back, f), 1e-12,
                             "to_spectral(to_physical(f)) == f"));

    const double spectral = l2_norm(f);
    const double physical = lp_norm(f, 2.0);
    out.push_back(make_check("core/plancherel", std::abs(spectral - physical) / spectral, 1e-12,
                             "spectral and collocation L2 norms agree"));

    SpectralField wave(g);
    wave.mode(2, -1, 3) = cplx(0.3, -0.7);
    wave.enforce_hermitian();
    const SpectralField lap = apply_symbol(wave, Symbol::laplacian());
    double derr = 0.0;
    const double xi2 = 4.0 + 1.0 + 9.0;  // |xi|^2 of the planted mode at L = 2 pi
    for (std::size_t i = 0; i < wave.c.size(); ++i)
        derr = std::max(derr, std::abs(lap.c[i] + xi2 * wave.c[i]));
    out.push_back(make_check("core/spectral_derivative", derr / std::abs(cplx(0.3, -0.7)), 1e-13,
                             "laplacian of a plane wave is -|xi|^2 times it"));

    const SpectralField scalar = random_real_field(g, rng);
    const VectorField cg = curl(gradient(scalar));
    out.push_back(make_check("core/curl_of_gradient", cg.max_abs() / scalar.max_abs(), 1e-12,
                             "curl grad == 0"));

    SpectralField t1 = f, t2 = f;
    dealias_truncate(t1);
    t2 = t1;
    dealias_truncate(t2);
    const bool limited = is_dealias_band_limited(t1);
    VerifyCheck c = make_check("core/dealias_projection", rel_max_diff(t2, t1), 1e-15,
                               "2/3-rule truncation is a projection onto the alias-free band");
    c.pass = c.pass && limited;
    out.push_back(c);
}

void check_lp(std::vector<VerifyCheck>& out, const VerifyOptions& opt) {
    const Grid3 g(opt.n, 2.0 * pi);
    const DyadicPartition part(g);
    rng_t rng = make_rng(opt.seed + 1);
    const SpectralField f = random_real_field(g, rng);

    SpectralField recon(g);
    for (int j = part.j_min; j <= part.j_max; ++j) {
        const SpectralField b = dyadic_block(part, f, j);
        for (std::size_t i = 0; i < recon.c.size(); ++i) recon.c[i] += b.c[i];
    }
    recon.c[0] += f.c[0];  // blocks carry no mean
    out.push_back(make_check("lp/block_reconstruction", rel_max_diff(recon, f), 1e-10,
                             "mean + sum of dyadic blocks rebuilds the field"));

    const SplitParts parts = frequency_split(part, f, 1);
    SpectralField sum(g);
    for (std::size_t i = 0; i < sum.c.size(); ++i) sum.c[i] = parts.low.c[i] + parts.high.c[i];
    out.push_back(make_check("lp/split_consistency", rel_max_diff(sum, f), 1e-12,
                             "low + high parts rebuild the field"));

    double worst = 0.0;
    for (int j = 1; j <= std::min(3, part.j_max); ++j) {
        const SpectralField b = dyadic_block(part, f, j);
        const double ratio = l2_norm(apply_symbol(b, Symbol::lambda_pow(1.0))) / l2_norm(b);
        const double up = (8.0 / 3.0) * std::pow(2.0, j);
        const double lo = 0.75 * std::pow(2.0, j);
        worst = std::max({worst, ratio / up, lo / ratio});
    }
    out.push_back(make_check("lp/bernstein_ratio", worst, 1.0 + 1e-12,
                             "gradient-to-field L2 ratio of a block sits inside its annulus"));

    rng_t rng2 = make_rng(opt.seed + 2);
    SpectralField a = random_real_field(g, rng2, 1.0, g.dealias_kmax() / 2);
    SpectralField b = random_real_field(g, rng2, 1.0, g.dealias_kmax() / 2);
    dealias_truncate(a);
    dealias_truncate(b);
    const auto pa = to_physical(a);
    const auto pb = to_physical(b);
    std::vector<cplx> prod(pa.size());
    for (std::size_t i = 0; i < pa.size(); ++i) prod[i] = pa[i] * pb[i];
    SpectralField ab = to_spectral(g, prod);
    dealias_truncate(ab);
    ab.c[0] = 0.0;  // paraproduct parts are zero-mean by construction
    const BonyParts bony = bony_decompose(part, a, b);
    SpectralField bsum(g);
    for (std::size_t i = 0; i < bsum.c.size(); ++i)
        bsum.c[i] = bony.t_ab.c[i] + bony.r_ab.c[i] + bony.t_ba.c[i];
    bsum.c[0] = 0.0;
    out.push_back(make_check("lp/bony_product", rel_max_diff(bsum, ab), 1e-10,
                             "paraproduct parts sum to the dealiased product"));
}

void check_linear(std::vector<VerifyCheck>& out, const VerifyOptions& opt) {
    rng_t rng = make_rng(opt.seed + 3);
    std::uniform_real_distribution<double> logxi(-2.0, 2.0);
    std::uniform_real_distribution<double> vd(0.1, 2.0);

    double worst = 0.0;
    std::string detail = "lambda_+ + lambda_- == trace, lambda_+ lambda_- == det";
    for (int trial = 0; trial < 200; ++trial) {
        const double xi = std::pow(10.0, logxi(rng));
        const Viscosities visc(vd(rng), vd(rng), vd(rng), vd(rng));
        const SymbolMatrix m = SymbolMatrix::at(xi, visc);
        EigenPair ev = eigenvalues(xi, visc);
        if (opt.tamper_eigenvalues) ev.lambda_plus *= 1.0 + 1e-3;  // negative-control fixture
        if (!ev.real_pair) {
            worst = 1.0;
            detail = "complex pair reported for positive viscosities";
            break;
        }
        const double tr = m.trace();
        const double det = m.determinant();
        const double e1 = std::abs(ev.lambda_plus + ev.lambda_minus - tr) / std::abs(tr);
        const double e2 =
            std::abs(ev.lambda_plus * ev.lambda_minus - det) / std::max(std::abs(det), 1e-30);
        worst = std::max({worst, e1, e2});
    }
    out.push_back(make_check("linear/eigenvalue_closed_form", worst, 1e-10, detail));

    std::uniform_real_distribution<double> td(0.01, 3.0);
    double sworst = 0.0;
    for (int trial = 0; trial < 50; ++trial) {
        const double xi = std::pow(10.0, logxi(rng));
        const double t = td(rng), s = td(rng);
        const Viscosities visc(vd(rng), vd(rng), vd(rng), vd(rng));
        const ModePropagator pt = mode_propagator(t, xi, visc);
        const ModePropagator ps = mode_propagator(s, xi, visc);
        const ModePropagator pts = mode_propagator(t + s, xi, visc);
        const double scale = std::max({std::abs(pts.p00), std::abs(pts.p01), std::abs(pts.p10),
                                       std::abs(pts.p11), 1e-300});
        const double e00 = std::abs(pt.p00 * ps.p00 + pt.p01 * ps.p10 - pts.p00);
        const double e01 = std::abs(pt.p00 * ps.p01 + pt.p01 * ps.p11 - pts.p01);
        const double e10 = std::abs(pt.p10 * ps.p00 + pt.p11 * ps.p10 - pts.p10);
        const double e11 = std::abs(pt.p10 * ps.p01 + pt.p11 * ps.p11 - pts.p11);
        const double eq = std::abs(pt.q_factor * ps.q_factor - pts.q_factor);
        sworst = std::max(sworst, std::max({e00, e01, e10, e11, eq}) / scale);
    }
    out.push_back(make_check("linear/propagator_semigroup", sworst, 1e-11,
                             "P(t+s) == P(t) P(s), gradient factor included"));

    double gworst = 0.0;
    for (int trial = 0; trial < 50; ++trial) {
        const double xi = std::pow(10.0, std::uniform_real_distribution<double>(-2.0, 0.5)(rng));
        const Viscosities visc(vd(rng), vd(rng), vd(rng), vd(rng));
        const SymbolMatrix m = SymbolMatrix::at(xi, visc);
        const double t = 0.7, h = 1e-5;
        const ModePropagator pp = mode_propagator(t + h, xi, visc);
        const ModePropagator pm = mode_propagator(t - h, xi, visc);
        const ModePropagator pc = mode_propagator(t, xi, visc);
        // d/dt P = -A P with A the decay generator
        const double d00 = (pp.p00 - pm.p00) / (2.0 * h) + m.a00 * pc.p00 + m.a01 * pc.p10;
        const double d01 = (pp.p01 - pm.p01) / (2.0 * h) + m.a00 * pc.p01 + m.a01 * pc.p11;
        const double d10 = (pp.p10 - pm.p10) / (2.0 * h) + m.a10 * pc.p00 + m.a11 * pc.p10;
        const double d11 = (pp.p11 - pm.p11) / (2.0 * h) + m.a10 * pc.p01 + m.a11 * pc.p11;
        gworst = std::max(gworst, std::max({std::abs(d00), std::abs(d01), std::abs(d10),
                                            std::abs(d11)}));
    }
    out.push_back(make_check("linear/propagator_generator", gworst, 1e-6,
                             "finite-difference time derivative matches -A P"));

    std::vector<double> xi_grid;
    for (int i = 0; i <= 80; ++i) xi_grid.push_back(std::pow(10.0, -4.0 + 8.0 * i / 80.0));
    const AsymptoticsReport rep = asymptotics_report(Viscosities::normalized(), xi_grid);
    VerifyCheck limits = make_check(
        "linear/limit_laws",
        std::max({std::abs(rep.low_plus_ratio - 1.0), std::abs(rep.low_minus_ratio - 1.0),
                  std::abs(rep.high_prod_ratio - 1.0), std::abs(rep.high_sum_ratio - 1.0)}),
        0.02, "dispersion curves reach their low and high frequency laws");
    limits.pass = limits.pass && rep.low_ok && rep.high_ok;
    out.push_back(limits);

    const Grid3 g(std::min(opt.n, 32), 2.0 * pi);
    rng_t frng = make_rng(opt.seed + 4);
    State st(g);
    st.u = random_solenoidal_field(g, frng);
    st.omega = random_vector_field(g, frng);
    const State evolved = linear_propagate(st, 0.7, Viscosities::normalized());
    const double div_err = divergence(evolved.u).max_abs() / evolved.u.max_abs();
    out.push_back(make_check("linear/divergence_preserved", div_err, 1e-12,
                             "exact propagator keeps the velocity solenoidal"));
}

void check_solver(std::vector<VerifyCheck>& out, const VerifyOptions& opt) {
    const Grid3 g(opt.n, 2.0 * pi);

    InitialData tg;
    tg.kind = InitialData::Kind::taylor_green;
    tg.amplitude = 1.0;
    const State tg0 = make_initial_state(g, tg);
    SolverConfig cfg;
    cfg.visc = Viscosities::normalized();
    cfg.dt = 0.9 * cfl_dt_max(tg0, cfg.cfl);
    cfg.t_end = 16.0 * cfg.dt;
    cfg.snapshot_times = {8.0 * cfg.dt, cfg.t_end};
    const SimulationResult run = simulate(tg0, cfg, {});

    const auto& energy = run.series.values.at("energy");
    double worst_growth = 0.0;
    for (std::size_t i = 0; i + 1 < energy.size(); ++i)
        worst_growth = std::max(worst_growth, energy[i + 1] / energy[i] - 1.0);
    out.push_back(make_check("solver/energy_nonincreasing", worst_growth, 1e-12,
                             "total energy never grows along a run"));

    double div_err = 0.0;
    for (const Snapshot& snap : run.snapshots)
        div_err = std::max(div_err, divergence(snap.state.u).max_abs() / snap.state.u.max_abs());
    out.push_back(
        make_check("solver/divergence_free", div_err, 1e-10, "stepped velocity stays solenoidal"));

    InitialData tiny;
    tiny.kind = InitialData::Kind::random_slope;
    tiny.amplitude = 1e-4;
    tiny.band = 8;
    tiny.seed = opt.seed + 5;
    const State s0 = make_initial_state(g, tiny);
    SolverConfig lcfg;
    lcfg.dt = 0.05;
    lcfg.t_end = 0.3;
    lcfg.visc = Viscosities::normalized();
    lcfg.snapshot_times = {0.3};
    const SimulationResult nl = simulate(s0, lcfg, {});
    const State lin = linear_propagate(s0, 0.3, lcfg.visc);
    VectorField diff = nl.snapshots.back().state.u;
    axpy(diff, -1.0, lin.u);
    out.push_back(make_check("solver/small_data_linear_limit", l2_norm(diff) / l2_norm(lin.u),
                             1e-2, "tiny-amplitude run tracks the exact linear flow"));

    InitialData fast = tg;
    fast.amplitude = 50.0;
    const State big = make_initial_state(g, fast);
    SolverConfig over;
    over.dt = 1.0;
    over.t_end = 2.0;
    over.visc = Viscosities::normalized();
    bool rejected = false;
    try {
        step(big, over);
    } catch (const std::invalid_argument&) {
        rejected = true;
    }
    VerifyCheck cfl = make_check("solver/cfl_guard", rejected ? 0.0 : 1.0, 0.5,
                                 "oversized steps are rejected with the admissible dt");
    cfl.pass = rejected;
    out.push_back(cfl);
}

void check_gevrey(std::vector<VerifyCheck>& out, const VerifyOptions& opt) {
    const Grid3 g(opt.n, 2.0 * pi);
    SpectralField f(g);
    for (int k0 = -g.n / 2; k0 < g.n / 2; ++k0)
        for (int k1 = -g.n / 2; k1 < g.n / 2; ++k1)
            for (int k2 = -g.n / 2; k2 < g.n / 2; ++k2) {
                const double r = std::sqrt(double(k0) * k0 + double(k1) * k1 + double(k2) * k2);
                if (r == 0.0) continue;
                f.mode(k0, k1, k2) = std::exp(-0.4 * r);
            }
    f.enforce_hermitian();
    const RadiusFit fit = radius_fit(f, 0, 4);
    out.push_back(make_check("gevrey/radius_recovery", std::abs(fit.radius_estimate - 0.4), 0.01,
                             "octave-shell fit recovers a planted analyticity radius"));

    const Grid3 g32(std::min(opt.n, 32), 2.0 * pi);
    const SmoothingReport sm =
        smoothing_constant_check(g32, 1.0, {0.1, 1.0, 10.0}, 20, 0.5, 2.0, 0, opt.seed + 6);
    VerifyCheck smc = make_check("gevrey/smoothing_bound", sm.worst_ratio, 1.0,
                                 "derivative gain bounded by the closed-form constant");
    smc.pass = smc.pass && sm.ok;
    out.push_back(smc);

    const EquivalenceReport eq =
        multiplier_equiv_check(g32, {0.0, 0.5, 1.0}, 1, 3, 3, 2.0, opt.seed + 7);
    VerifyCheck eqc = make_check(
        "gevrey/multiplier_sandwich",
        std::max(eq.max_upper_ratio - 1.0, 1.0 - eq.min_lower_ratio), 1e-12,
        "l1 exponential weights sandwich the euclidean one at block scale");
    eqc.pass = eqc.pass && eq.sandwich_ok;
    out.push_back(eqc);

    const BilinearReport bl = bilinear_symbol_check(1.0, 1.0, 1.0, 2.0, 0, 2, 100, opt.seed + 8);
    VerifyCheck blc =
        make_check("gevrey/bilinear_gradient",
                   std::max(bl.worst_xi_constant, bl.worst_eta_constant), 16.0,
                   "frequency gradient of the bilinear weight obeys the 16/|xi| bound");
    blc.pass = blc.pass && bl.min_margin >= -1e-9;
    out.push_back(blc);
}

}  // namespace

VerifyReport verify(VerifySuite suite, const VerifyOptions& opt) {
    const auto t0 = std::chrono::steady_clock::now();
    VerifyReport rep;
    rep.suite = suite_name(suite);

    const bool everything = suite == VerifySuite::all;
    if (everything || suite == VerifySuite::core) check_core(rep.checks, opt);
    if (everything || suite == VerifySuite::lp) check_lp(rep.checks, opt);
    if (everything || suite == VerifySuite::linear) check_linear(rep.checks, opt);
    if (everything || suite == VerifySuite::solver) check_solver(rep.checks, opt);
    if (everything || suite == VerifySuite::gevrey) check_gevrey(rep.checks, opt);

    rep.all_pass = std::all_of(rep.checks.begin(), rep.checks.end(),
                               [](const VerifyCheck& c) { return c.pass; });
    rep.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return rep;
}

}  // namespace mps
