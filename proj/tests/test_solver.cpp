#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <string>
#include <vector>

#include "mps/field.hpp"
#include "mps/grid.hpp"
#include "mps/initial_data.hpp"
#include "mps/linear.hpp"
#include "mps/ops.hpp"
#include "mps/random_fields.hpp"
#include "mps/solver.hpp"
#include "mps/transform.hpp"

using namespace mps;

namespace {

double max_diff(const SpectralField& a, const SpectralField& b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.c.size(); ++i) m = std::max(m, std::abs(a.c[i] - b.c[i]));
    return m;
}

double max_diff(const VectorField& a, const VectorField& b) {
    return std::max({max_diff(a[0], b[0]), max_diff(a[1], b[1]), max_diff(a[2], b[2])});
}

double state_scale(const State& s) {
    return std::max(s.u.max_abs(), s.omega.max_abs());
}

double vec_hermitian_error(const VectorField& v) {
    return std::max({v[0].hermitian_error(), v[1].hermitian_error(), v[2].hermitian_error()});
}

double state_l2_diff(const State& a, const State& b) {
    VectorField du = a.u, dw = a.omega;
    axpy(du, -1.0, b.u);
    axpy(dw, -1.0, b.omega);
    const double eu = l2_norm(du), ew = l2_norm(dw);
    return std::sqrt(eu * eu + ew * ew);
}

// -(u . grad) v in the convective form, an independent oracle for the
// production path (which assembles -P div(u (x) u) from the product tensor)
VectorField convective_form(const VectorField& u_in, const VectorField& v_in) {
    VectorField u = u_in, v = v_in;
    dealias_truncate(u);
    dealias_truncate(v);
    const Grid3& g = u.grid();
    std::array<std::vector<double>, 3> pu;
    for (int c = 0; c < 3; ++c) pu[c] = to_physical_real(u[c]);
    VectorField out(g);
    std::vector<cplx> buf(g.size());
    for (int c = 0; c < 3; ++c) {
        const VectorField dv = gradient(v[c]);
        std::array<std::vector<double>, 3> pd;
        for (int m = 0; m < 3; ++m) pd[m] = to_physical_real(dv[m]);
        for (std::size_t i = 0; i < buf.size(); ++i)
            buf[i] = -(pu[0][i] * pd[0][i] + pu[1][i] * pd[1][i] + pu[2][i] * pd[2][i]);
        out[c] = to_spectral(g, buf);
    }
    dealias_truncate(out);
    return out;
}

// classical (non integrating-factor) RK4 for the plain Navier-Stokes system
// u' = nu Lap u - P[(u . grad) u], used as an independent cross-check when
// the angular coupling is switched off
VectorField ns_rhs(const VectorField& u, double nu) {
    VectorField out = leray_project(convective_form(u, u));
    VectorField lap = apply_symbol(u, Symbol::laplacian());
    axpy(out, nu, lap);
    return out;
}

VectorField plain_rk4_ns(VectorField u, double nu, double dt, int steps) {
    dealias_truncate(u);
    for (int s = 0; s < steps; ++s) {
        const VectorField k1 = ns_rhs(u, nu);
        VectorField ya = u;
        axpy(ya, 0.5 * dt, k1);
        const VectorField k2 = ns_rhs(ya, nu);
        VectorField yb = u;
        axpy(yb, 0.5 * dt, k2);
        const VectorField k3 = ns_rhs(yb, nu);
        VectorField yc = u;
        axpy(yc, dt, k3);
        const VectorField k4 = ns_rhs(yc, nu);
        axpy(u, dt / 6.0, k1);
        axpy(u, dt / 3.0, k2);
        axpy(u, dt / 3.0, k3);
        axpy(u, dt / 6.0, k4);
        u.enforce_hermitian();
    }
    return u;
}

State random_state(const Grid3& g, rng_t& rng, double amp_u, double amp_w, int band = -1) {
    State s(g);
    s.u = random_solenoidal_field(g, rng, amp_u, band);
    s.omega = random_vector_field(g, rng, amp_w, band);
    return s;
}

State march(State s, SolverConfig config, int steps) {
    for (int i = 0; i < steps; ++i) s = step(s, config);
    return s;
}

}  // namespace

TEST_CASE("advective terms vanish on zero data and match the convective form") {
    const Grid3 g(16, 2.0 * pi);

    const State zero(g);
    auto [f0, g0] = nonlinear_rhs(zero);
    CHECK(f0.max_abs() == 0.0);
    CHECK(g0.max_abs() == 0.0);

    rng_t rng = make_rng(42);
    State s = random_state(g, rng, 0.8, 0.6, 4);
    auto [f, gw] = nonlinear_rhs(s);
    const double sc = std::max(f.max_abs(), gw.max_abs());

    // with div u = 0 and exact dealiased products the conservative and
    // convective forms agree identically
    const VectorField f_ref = leray_project(convective_form(s.u, s.u));
    const VectorField g_ref = convective_form(s.u, s.omega);
    CHECK(max_diff(f, f_ref) <= 1e-12 * sc);
    CHECK(max_diff(gw, g_ref) <= 1e-12 * sc);

    CHECK(divergence_error(f) <= 1e-12);
    for (int c = 0; c < 3; ++c) {
        CHECK(is_dealias_band_limited(f[c]));
        CHECK(is_dealias_band_limited(gw[c]));
        CHECK(std::abs(f[c].c[0]) == 0.0);           // mode 0 of a divergence
        CHECK(std::abs(gw[c].c[0]) <= 1e-14 * sc);   // integral of div(u w_c)
    }

    // no spin, no advection of spin: the products are exact zeros
    State u_only = s;
    u_only.omega = VectorField(g);
    auto [f1, g1] = nonlinear_rhs(u_only);
    CHECK(g1.max_abs() == 0.0);
    CHECK(max_diff(f1, f_ref) <= 1e-12 * sc);
}

TEST_CASE("cfl bound scales with the data and gates the step") {
    const Grid3 g(16, 2.0 * pi);
    const State zero(g);
    CHECK(std::isinf(cfl_dt_max(zero, 0.5)));

    InitialData tg;
    tg.kind = InitialData::Kind::taylor_green;
    tg.amplitude = 1.0;
    const State s = make_initial_state(g, tg);

    const double d1 = cfl_dt_max(s, 0.5);
    CHECK(d1 > 0.0);
    CHECK(cfl_dt_max(s, 0.25) == doctest::Approx(0.5 * d1).epsilon(1e-12));

    InitialData tg2 = tg;
    tg2.amplitude = 2.0;
    const State s2 = make_initial_state(g, tg2);
    CHECK(cfl_dt_max(s2, 0.5) == doctest::Approx(0.5 * d1).epsilon(1e-12));

    SolverConfig config;
    config.dt = 1.01 * d1;
    CHECK_THROWS_AS(step(s, config), std::invalid_argument);
    config.dt = 0.99 * d1;
    const State out = step(s, config);
    CHECK(out.time == doctest::Approx(config.dt).epsilon(1e-12));
}

TEST_CASE("a step preserves structure and leaves zero data at rest") {
    const Grid3 g(16, 2.0 * pi);
    SolverConfig config;
    config.dt = 0.02;

    State zero(g);
    zero.time = 0.3;
    const State still = step(zero, config);
    CHECK(state_scale(still) == 0.0);
    CHECK(still.time == doctest::Approx(0.32).epsilon(1e-12));

    rng_t rng = make_rng(7);
    const State s = random_state(g, rng, 0.3, 0.4);
    for (Integrator it : {Integrator::if_rk2, Integrator::if_rk4}) {
        config.integrator = it;
        const State out = step(s, config);
        const double sc = state_scale(out);
        CHECK(vec_hermitian_error(out.u) <= 1e-13 * sc);
        CHECK(vec_hermitian_error(out.omega) <= 1e-13 * sc);
        CHECK(divergence_error(out.u) <= div_free_tol);
        for (int c = 0; c < 3; ++c) {
            CHECK(is_dealias_band_limited(out.u[c]));
            CHECK(is_dealias_band_limited(out.omega[c]));
        }
        CHECK(out.time == doctest::Approx(s.time + config.dt).epsilon(1e-12));
    }
}

TEST_CASE("discrete energy never increases along either integrator") {
    const Grid3 g(16, 2.0 * pi);
    InitialData data;
    data.kind = InitialData::Kind::random_slope;
    data.amplitude = 0.2;
    data.sigma = 1.5;
    data.band = 4;
    data.seed = 11;

    for (Integrator it : {Integrator::if_rk2, Integrator::if_rk4}) {
        SolverConfig config;
        config.dt = 0.02;
        config.t_end = 0.6;
        config.integrator = it;
        const SimulationResult res = simulate(g, data, config, {});
        const auto& energy = res.series.values.at("energy");
        REQUIRE(energy.size() >= 30);
        CHECK(energy.front() > 0.0);
        for (std::size_t i = 1; i < energy.size(); ++i)
            CHECK(energy[i] <= energy[i - 1] * (1.0 + 1e-9));
        CHECK(res.max_growth <= 2.0);
    }
}

TEST_CASE("zero coupling with zero spin reproduces plain Navier-Stokes") {
    const Grid3 g(16, 2.0 * pi);
    const Viscosities visc(0.5, 0.0, 1.0, 1.0);

    InitialData tg;
    tg.kind = InitialData::Kind::taylor_green;
    tg.amplitude = 0.3;
    const State s0 = make_initial_state(g, tg);
    REQUIRE(s0.omega.max_abs() == 0.0);

    auto run_pair = [&](double dt, int steps) {
        SolverConfig config;
        config.visc = visc;
        config.dt = dt;
        config.integrator = Integrator::if_rk4;
        const State a = march(s0, config, steps);
        CHECK(a.omega.max_abs() == 0.0);  // nothing feeds the spin equation
        VectorField u0 = s0.u;
        const VectorField b = plain_rk4_ns(u0, visc.nu, dt, steps);
        VectorField d = a.u;
        axpy(d, -1.0, b);
        return l2_norm(d);
    };

    const double diff1 = run_pair(0.04, 5);
    const double diff2 = run_pair(0.02, 10);
    CHECK(diff1 <= 1e-6);
    CHECK(diff1 > 1e-13);  // above the rounding floor, so the ratio is meaningful
    // both schemes are fourth order; the defect between them shrinks like dt^4
    CHECK(diff1 / diff2 >= 8.0);
    CHECK(diff1 / diff2 <= 32.0);
}

TEST_CASE("richardson refinement recovers the advertised orders") {
    const Grid3 g(16, 2.0 * pi);
    InitialData data;
    data.kind = InitialData::Kind::random_slope;
    data.amplitude = 0.15;
    data.band = 4;
    data.seed = 5;
    const State s0 = make_initial_state(g, data);
    REQUIRE(cfl_dt_max(s0, 0.5) > 0.04);

    const double T = 0.32;
    auto order_of = [&](Integrator it) {
        std::array<double, 3> dts = {0.04, 0.02, 0.01};
        std::array<State, 3> finals = {State(g), State(g), State(g)};
        for (int i = 0; i < 3; ++i) {
            SolverConfig config;
            config.dt = dts[i];
            config.integrator = it;
            finals[i] = march(s0, config, static_cast<int>(std::lround(T / dts[i])));
        }
        const double e1 = state_l2_diff(finals[0], finals[1]);
        const double e2 = state_l2_diff(finals[1], finals[2]);
        REQUIRE(e2 > 1e-13);
        return std::log2(e1 / e2);
    };

    CHECK(order_of(Integrator::if_rk2) == doctest::Approx(2.0).epsilon(0.1));
    CHECK(order_of(Integrator::if_rk4) == doctest::Approx(4.0).epsilon(0.1));
}

TEST_CASE("one step deviates from the first-order expansion at second order") {
    const Grid3 g(16, 2.0 * pi);
    rng_t rng = make_rng(19);
    const State s = random_state(g, rng, 0.2, 0.25, 4);

    State s_trunc = s;
    dealias_truncate(s_trunc.u);
    dealias_truncate(s_trunc.omega);
    auto [f, gw] = nonlinear_rhs(s_trunc);

    auto defect = [&](Integrator it, double dt) {
        SolverConfig config;
        config.dt = dt;
        config.integrator = it;
        const State stepped = step(s_trunc, config);
        State ref = linear_propagate(s_trunc, dt, config.visc);
        axpy(ref.u, dt, f);
        axpy(ref.omega, dt, gw);
        return state_l2_diff(stepped, ref);
    };

    for (Integrator it : {Integrator::if_rk2, Integrator::if_rk4}) {
        const double d1 = defect(it, 0.02);
        const double d2 = defect(it, 0.01);
        REQUIRE(d2 > 1e-13);
        CHECK(std::log2(d1 / d2) >= 1.7);
        CHECK(std::log2(d1 / d2) <= 2.6);
    }
}

TEST_CASE("simulate records zero columns for zero data and emits snapshots") {
    const Grid3 g(16, 2.0 * pi);
    const State zero(g);
    SolverConfig config;
    config.dt = 0.02;
    config.t_end = 0.1;
    config.snapshot_times = {0.04, 0.1};

    const SimulationResult res = simulate(zero, config, {{0.0, 2.0, false}, {1.0, 2.0, true}});
    CHECK(res.max_growth == 0.0);
    REQUIRE(res.snapshots.size() == 2);
    CHECK(res.snapshots[0].state.time == doctest::Approx(0.04).epsilon(0.5));
    CHECK(std::abs(res.snapshots[0].state.time - 0.04) <= 0.5 * config.dt + 1e-12);
    CHECK(std::abs(res.snapshots[1].state.time - 0.10) <= 0.5 * config.dt + 1e-12);
    CHECK(state_scale(res.snapshots[1].state) == 0.0);

    for (const char* col : {"u_l0_r2", "w_l1_r2", "energy", "besov_low", "besov_high"}) {
        const auto& v = res.series.values.at(col);
        REQUIRE(v.size() == res.series.times.size());
        for (double x : v) CHECK(x == 0.0);
    }
}

TEST_CASE("linear-only simulate matches the exact propagator") {
    const Grid3 g(16, 4.0);
    rng_t rng = make_rng(23);
    State s0 = random_state(g, rng, 0.05, 0.07);
    dealias_truncate(s0.u);
    dealias_truncate(s0.omega);
    s0.u.enforce_hermitian();
    s0.omega.enforce_hermitian();

    SolverConfig config;
    config.visc = Viscosities(0.9, 0.35, 1.4, 0.6);
    config.nonlinear = false;
    config.dt = 0.05;
    config.t_end = 0.5;
    config.snapshot_times = {0.5};

    const SimulationResult res = simulate(s0, config, {});
    REQUIRE(res.snapshots.size() == 1);
    const State& got = res.snapshots.back().state;
    CHECK(got.time == doctest::Approx(0.5).epsilon(1e-10));

    const State ref = linear_propagate(s0, 0.5, config.visc);
    CHECK(max_diff(got.u, ref.u) <= 1e-10 * state_scale(ref));
    CHECK(max_diff(got.omega, ref.omega) <= 1e-10 * state_scale(ref));
}

TEST_CASE("growth guard aborts a run pumped past its threshold") {
    // tiny velocity against a big spin on a large box: the angular coupling
    // pumps max|u| far beyond the guard within a few time units
    const Grid3 g(8, 16.0 * pi);
    rng_t rng = make_rng(31);
    State s(g);
    s.u = random_solenoidal_field(g, rng, 1e-4);
    s.omega = random_vector_field(g, rng, 1.0);

    SolverConfig config;
    config.dt = 0.1;
    config.t_end = 6.0;
    config.growth_guard = 10.0;

    bool thrown = false;
    try {
        simulate(s, config, {});
    } catch (const std::runtime_error& e) {
        thrown = true;
        CHECK(std::string(e.what()).find("grew") != std::string::npos);
    }
    CHECK(thrown);
}

TEST_CASE("smallness report splits the dyadic norms at the cutoff") {
    const Grid3 g(32, 2.0 * pi);

    const State zero(g);
    const SmallnessReport z = smallness_report(zero, 2.0, 1.0, 0);
    CHECK(z.x0p == 0.0);
    CHECK(z.high_part == 0.0);
    CHECK(z.low_part == 0.0);

    // |xi| = 4 lives in dyadic blocks 1 and 2, entirely above the cutoff 0
    State hi(g);
    hi.u[0].mode(0, 0, 4) = cplx(0.3, 0.1);
    hi.u[0].mode(0, 0, -4) = std::conj(cplx(0.3, 0.1));
    const SmallnessReport rh = smallness_report(hi, 2.0, 1.0, 0);
    CHECK(rh.low_part == 0.0);
    CHECK(rh.high_part > 0.0);
    CHECK(rh.x0p == rh.high_part);

    // |xi| = 1 lives in blocks -1 and 0, entirely below), and a spin-only
    // state must enter through Lambda omega: compare against the same state
    // fed in as a velocity after applying Lambda by hand
    State lo_w(g);
    lo_w.omega[1].mode(1, 0, 0) = cplx(0.0, 0.5);
    lo_w.omega[1].mode(-1, 0, 0) = std::conj(cplx(0.0, 0.5));
    const SmallnessReport rw = smallness_report(lo_w, 2.0, 1.0, 0);
    CHECK(rw.high_part == 0.0);
    CHECK(rw.low_part > 0.0);

    State lo_u(g);
    lo_u.u = apply_symbol(lo_w.omega, Symbol::lambda_pow(1.0));
    const SmallnessReport ru = smallness_report(lo_u, 2.0, 1.0, 0);
    CHECK(rw.low_part == doctest::Approx(ru.low_part).epsilon(1e-12));

    // the report is a pure function of the state
    InitialData kato;
    kato.kind = InitialData::Kind::kato_oscillating;
    kato.amplitude = 0.4;
    kato.epsilon = 0.125;
    kato.seed = 9;
    const State a = make_initial_state(g, kato);
    const State b = make_initial_state(g, kato);
    const SmallnessReport ra = smallness_report(a, 2.0, 1.0, 0);
    const SmallnessReport rb = smallness_report(b, 2.0, 1.0, 0);
    CHECK(ra.x0p > 0.0);
    CHECK(ra.x0p == doctest::Approx(rb.x0p).epsilon(1e-12));
    CHECK(ra.x0p == doctest::Approx(ra.high_part + ra.low_part).epsilon(1e-12));
}

TEST_CASE("taylor-green data is planar, solenoidal, and sized to order") {
    const Grid3 g(16, 2.0 * pi);
    InitialData tg;
    tg.kind = InitialData::Kind::taylor_green;
    tg.amplitude = 0.7;
    const State s = make_initial_state(g, tg);

    CHECK(s.omega.max_abs() == 0.0);
    CHECK(s.u[2].max_abs() == 0.0);
    CHECK(l2_norm(s.u) == doctest::Approx(0.7).epsilon(1e-12));
    CHECK(divergence_error(s.u) <= 1e-13);
    CHECK(vec_hermitian_error(s.u) <= 1e-15);
    for (int c = 0; c < 3; ++c) CHECK(std::abs(s.u[c].c[0]) == 0.0);

    // single-octave support: every coefficient away from |k_i| = 1 is a
    // transform crumb at most
    CHECK(std::abs(s.u[0].mode(1, 1, 1)) > 0.01);
    CHECK(std::abs(s.u[0].mode(2, 0, 0)) <= 1e-15);
    CHECK(std::abs(s.u[0].mode(1, 2, 1)) <= 1e-15);
}

TEST_CASE("oscillating shear data snaps its frequency and stays planar") {
    const Grid3 g(32, 2.0 * pi);
    InitialData kato;
    kato.kind = InitialData::Kind::kato_oscillating;
    kato.amplitude = 0.5;
    kato.epsilon = 0.125;  // snaps to 8 vertical oscillations on this box
    kato.seed = 3;
    const State s = make_initial_state(g, kato);

    CHECK(s.omega.max_abs() == 0.0);
    CHECK(s.u[2].max_abs() == 0.0);
    CHECK(l2_norm(s.u) == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(divergence_error(s.u) <= 1e-12);

    // all the energy rides the k3 = +-8 planes
    double off = 0.0, total = 0.0;
    for (int c = 0; c < 3; ++c)
        for (int i0 = 0; i0 < g.n; ++i0)
            for (int i1 = 0; i1 < g.n; ++i1)
                for (int i2 = 0; i2 < g.n; ++i2) {
                    const double a2 = std::norm(s.u[c].at(i0, i1, i2));
                    total += a2;
                    if (std::abs(g.mode(i2)) != 8) off += a2;
                }
    CHECK(total > 0.0);
    CHECK(off <= 1e-24 * total);

    // a nearby epsilon snaps to the same integer frequency
    InitialData near = kato;
    near.epsilon = 0.13;
    const State s2 = make_initial_state(g, near);
    double off2 = 0.0;
    for (int c = 0; c < 3; ++c)
        for (int i0 = 0; i0 < g.n; ++i0)
            for (int i1 = 0; i1 < g.n; ++i1)
                for (int i2 = 0; i2 < g.n; ++i2)
                    if (std::abs(g.mode(i2)) != 8) off2 += std::norm(s2.u[c].at(i0, i1, i2));
    CHECK(off2 <= 1e-24 * total);

    // oscillations beyond the dealias band are rejected, and the bump
    // center follows the seed
    InitialData fine = kato;
    fine.epsilon = 0.05;  // would need k3 = 20 > n/3
    CHECK_THROWS_AS(make_initial_state(g, fine), std::invalid_argument);
    InitialData other = kato;
    other.seed = 4;
    const State s3 = make_initial_state(g, other);
    CHECK(max_diff(s3.u, s.u) > 1e-3);
}

TEST_CASE("random slope data meets its spectral envelope exactly") {
    const Grid3 g(32, 2.0 * pi);
    InitialData data;
    data.kind = InitialData::Kind::random_slope;
    data.amplitude = 1.0;
    data.sigma = 1.1;
    data.band = 6;
    data.omega_ratio = 0.5;
    data.seed = 3;
    const State s = make_initial_state(g, data);

    CHECK(l2_norm(s.u) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(l2_norm(s.omega) == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(divergence_error(s.u) <= 1e-12);

    // per-mode magnitudes: |u_hat| = C |xi|^(sigma - 3/2) and the spin
    // carries one extra inverse power
    double cu_ref = -1.0, cw_ref = -1.0;
    for (int k0 = -g.n / 2; k0 < g.n / 2; ++k0)
        for (int k1 = -g.n / 2; k1 < g.n / 2; ++k1)
            for (int k2 = -g.n / 2; k2 < g.n / 2; ++k2) {
                const long kk = long(k0) * k0 + long(k1) * k1 + long(k2) * k2;
                const double r = std::sqrt(double(kk));
                double au2 = 0.0, aw2 = 0.0;
                for (int c = 0; c < 3; ++c) {
                    au2 += std::norm(s.u[c].mode(k0, k1, k2));
                    aw2 += std::norm(s.omega[c].mode(k0, k1, k2));
                }
                if (kk == 0 || kk > long(data.band) * data.band) {
                    CHECK(au2 == 0.0);
                    CHECK(aw2 == 0.0);
                    continue;
                }
                const double cu = std::sqrt(au2) / std::pow(r, data.sigma - 1.5);
                const double cw = std::sqrt(aw2) / std::pow(r, data.sigma - 2.5);
                if (cu_ref < 0.0) {
                    cu_ref = cu;
                    cw_ref = cw;
                } else {
                    CHECK(cu == doctest::Approx(cu_ref).epsilon(1e-10));
                    CHECK(cw == doctest::Approx(cw_ref).epsilon(1e-10));
                }
            }

    // reproducible per seed, different across seeds
    const State again = make_initial_state(g, data);
    CHECK(max_diff(again.u, s.u) == 0.0);
    CHECK(max_diff(again.omega, s.omega) == 0.0);
    InitialData other = data;
    other.seed = 4;
    CHECK(max_diff(make_initial_state(g, other).u, s.u) > 1e-6);

    // coherent phases make every coefficient real
    InitialData coh = data;
    coh.coherent_phases = true;
    const State sc = make_initial_state(g, coh);
    double worst_imag = 0.0;
    for (int c = 0; c < 3; ++c)
        for (std::size_t i = 0; i < sc.u[c].c.size(); ++i)
            worst_imag = std::max({worst_imag, std::abs(sc.u[c].c[i].imag()),
                                   std::abs(sc.omega[c].c[i].imag())});
    CHECK(worst_imag <= 1e-13 * state_scale(sc));
    CHECK(l2_norm(sc.u) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("simulate samples norms on the requested cadence with honest labels") {
    const Grid3 g(16, 2.0 * pi);
    InitialData data;
    data.kind = InitialData::Kind::random_slope;
    data.amplitude = 0.1;
    data.band = 4;
    data.seed = 13;
    const State s0 = make_initial_state(g, data);

    SolverConfig config;
    config.dt = 0.02;
    config.t_end = 0.2;
    config.sample_every = 3;

    const std::vector<NormRequest> norms = {{0.0, 2.0, false}, {1.0, 2.0, false}, {0.0, 2.0, true}};
    const SimulationResult res = simulate(s0, config, norms);

    // rows at steps 0, 3, 6, 9 and the forced final step 10
    REQUIRE(res.series.times.size() == 5);
    CHECK(res.series.times.front() == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(res.series.times.back() == doctest::Approx(0.2).epsilon(1e-10));
    for (std::size_t i = 1; i < res.series.times.size(); ++i)
        CHECK(res.series.times[i] > res.series.times[i - 1]);

    const double u0 = res.series.values.at("u_l0_r2").front();
    const double u1 = res.series.values.at("u_l1_r2").front();
    const double w0 = res.series.values.at("w_l0_r2").front();
    CHECK(u0 == doctest::Approx(l2_norm(s0.u)).epsilon(1e-12));
    CHECK(u1 == doctest::Approx(l2_norm(apply_symbol(s0.u, Symbol::lambda_pow(1.0)))).epsilon(1e-12));
    CHECK(w0 == doctest::Approx(l2_norm(s0.omega)).epsilon(1e-12));

    const SmallnessReport rep = smallness_report(s0, 2.0, 1.0, 0);
    CHECK(res.series.values.at("besov_low").front() == doctest::Approx(rep.low_part).epsilon(1e-12));
    CHECK(res.series.values.at("besov_high").front() == doctest::Approx(rep.high_part).epsilon(1e-12));
}
