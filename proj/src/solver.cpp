#include "mps/solver.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <cstdio>
#include <sstream>
#include <stdexcept>

#include "mps/linear.hpp"
#include "mps/ops.hpp"
#include "mps/transform.hpp"

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

void add_scaled(State& y, double a, const State& x) {
    axpy(y.u, a, x.u);
    axpy(y.omega, a, x.omega);
}

double phys_max_speed(const VectorField& u) {
    const std::vector<double> p0 = to_physical_real(u[0]);
    const std::vector<double> p1 = to_physical_real(u[1]);
    const std::vector<double> p2 = to_physical_real(u[2]);
    double m = 0.0;
    for (std::size_t i = 0; i < p0.size(); ++i)
        m = std::max(m, p0[i] * p0[i] + p1[i] * p1[i] + p2[i] * p2[i]);
    return std::sqrt(m);
}

void postprocess(State& y) {
    y.u.enforce_hermitian();
    y.omega.enforce_hermitian();
    y.u = leray_project(y.u);
    dealias_truncate(y.u);
    dealias_truncate(y.omega);
}

State rhs_state(const State& s, bool nonlinear) {
    if (!nonlinear) return State(s.grid());
    auto [f, g] = nonlinear_rhs(s);
    State k(s.grid());
    k.u = std::move(f);
    k.omega = std::move(g);
    return k;
}

std::string fmt_num(double x) {
    if (std::isinf(x)) return "inf";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%g", x);
    return buf;
}

std::string norm_label(const NormRequest& r) {
    return std::string(r.on_omega ? "w" : "u") + "_l" + fmt_num(r.l) + "_r" + fmt_num(r.r);
}

double lambda_lr_norm(const VectorField& v, double l, double r) {
    if (l == 0.0) return r == 2.0 ? l2_norm(v) : lp_norm(v, r);
    const VectorField d = apply_symbol(v, Symbol::lambda_pow(l));
    return r == 2.0 ? l2_norm(d) : lp_norm(d, r);
}

}  // namespace

void SolverConfig::validate() const {
    if (!(dt > 0.0)) throw std::invalid_argument("SolverConfig: dt must be positive");
    if (!(t_end > 0.0)) throw std::invalid_argument("SolverConfig: t_end must be positive");
    if (!(cfl > 0.0)) throw std::invalid_argument("SolverConfig: cfl must be positive");
    if (sample_every < 1) throw std::invalid_argument("SolverConfig: sample_every must be >= 1");
    if (!(growth_guard > 1.0)) throw std::invalid_argument("SolverConfig: growth guard must exceed 1");
}

std::pair<VectorField, VectorField> nonlinear_rhs(const State& s) {
    const Grid3& g = s.grid();
    VectorField u = s.u;
    VectorField w = s.omega;
    dealias_truncate(u);
    dealias_truncate(w);

    std::array<std::vector<double>, 3> pu;
    for (int c = 0; c < 3; ++c) pu[c] = to_physical_real(u[c]);

    // g = -(u . grad) omega, gradients taken spectrally
    VectorField g_out(g);
    std::vector<cplx> buf(g.size());
    for (int c = 0; c < 3; ++c) {
        const VectorField dw = gradient(w[c]);
        std::array<std::vector<double>, 3> pd;
        for (int m = 0; m < 3; ++m) pd[m] = to_physical_real(dw[m]);
        for (std::size_t i = 0; i < buf.size(); ++i)
            buf[i] = -(pu[0][i] * pd[0][i] + pu[1][i] * pd[1][i] + pu[2][i] * pd[2][i]);
        g_out[c] = to_spectral(g, buf);
    }

    // f = -P div(u (x) u) from the six distinct physical products
    std::array<SpectralField, 6> t_hat = {SpectralField(g), SpectralField(g), SpectralField(g),
                                          SpectralField(g), SpectralField(g), SpectralField(g)};
    static constexpr int pair_a[6] = {0, 0, 0, 1, 1, 2};
    static constexpr int pair_b[6] = {0, 1, 2, 1, 2, 2};
    for (int q = 0; q < 6; ++q) {
        for (std::size_t i = 0; i < buf.size(); ++i)
            buf[i] = pu[pair_a[q]][i] * pu[pair_b[q]][i];
        t_hat[q] = to_spectral(g, buf);
    }
    // component c of div(T): i xi_m T_hat(m, c)
    static constexpr int tensor_at[3][3] = {{0, 1, 2}, {1, 3, 4}, {2, 4, 5}};
    VectorField f_out(g);
    const cplx i_unit(0.0, 1.0);
    for_each_mode(g, [&](std::size_t id, double x0, double x1, double x2) {
        for (int c = 0; c < 3; ++c) {
            f_out[c].c[id] = -i_unit * (x0 * t_hat[tensor_at[0][c]].c[id] +
                                        x1 * t_hat[tensor_at[1][c]].c[id] +
                                        x2 * t_hat[tensor_at[2][c]].c[id]);
        }
    });
    f_out = leray_project(f_out);
    dealias_truncate(f_out);
    dealias_truncate(g_out);
    return {std::move(f_out), std::move(g_out)};
}

double cfl_dt_max(const State& s, double cfl) {
    const double speed = phys_max_speed(s.u);
    if (speed == 0.0) return std::numeric_limits<double>::infinity();
    const double xi_band = std::sqrt(3.0) * s.grid().xi_step() * s.grid().dealias_kmax();
    return cfl / (speed * xi_band);
}

State step(const State& s, const SolverConfig& config) {
    config.validate();
    const double dt = config.dt;
    const double dt_max = cfl_dt_max(s, config.cfl);
    if (dt > dt_max) {
        std::ostringstream msg;
        msg << "step: dt = " << dt << " exceeds the CFL bound; use dt <= " << dt_max;
        throw std::invalid_argument(msg.str());
    }
    const Viscosities& v = config.visc;

    if (!config.nonlinear) {
        State out = linear_propagate(s, dt, v);
        postprocess(out);
        return out;
    }

    State y1(s.grid());
    if (config.integrator == Integrator::if_rk2) {
        const State k1 = rhs_state(s, true);
        const State ey = linear_propagate(s, dt, v);
        const State ek1 = linear_propagate(k1, dt, v);
        State pred = ey;
        add_scaled(pred, dt, ek1);
        const State k2 = rhs_state(pred, true);
        y1 = ey;
        add_scaled(y1, 0.5 * dt, ek1);
        add_scaled(y1, 0.5 * dt, k2);
    } else {
        const double h = 0.5 * dt;
        const State k1 = rhs_state(s, true);
        const State ehy = linear_propagate(s, h, v);
        const State ehk1 = linear_propagate(k1, h, v);

        State ya = ehy;
        add_scaled(ya, h, ehk1);
        const State k2 = rhs_state(ya, true);

        State yb = ehy;
        add_scaled(yb, h, k2);
        const State k3 = rhs_state(yb, true);

        const State ey = linear_propagate(ehy, h, v);
        const State ehk3 = linear_propagate(k3, h, v);
        State yc = ey;
        add_scaled(yc, dt, ehk3);
        const State k4 = rhs_state(yc, true);

        const State ek1 = linear_propagate(ehk1, h, v);
        const State ehk2 = linear_propagate(k2, h, v);

        y1 = ey;
        add_scaled(y1, dt / 6.0, ek1);
        add_scaled(y1, dt / 3.0, ehk2);
        add_scaled(y1, dt / 3.0, ehk3);
        add_scaled(y1, dt / 6.0, k4);
    }
    y1.time = s.time + dt;
    postprocess(y1);
    return y1;
}

SimulationResult simulate(const State& initial, const SolverConfig& config,
                          const std::vector<NormRequest>& norms,
                          double besov_p, double besov_q, int besov_j0) {
    config.validate();
    const Grid3& g = initial.grid();

    State state = initial;
    dealias_truncate(state.u);
    dealias_truncate(state.omega);
    state.u.enforce_hermitian();
    state.omega.enforce_hermitian();
    for (int c = 0; c < 3; ++c) {
        const double sc = std::max({state.u.max_abs(), state.omega.max_abs(), 1e-300});
        if (std::abs(state.u[c].c[0]) > 1e-12 * sc || std::abs(state.omega[c].c[0]) > 1e-12 * sc)
            throw std::invalid_argument("simulate: initial data must have zero mean");
    }

    const DyadicPartition part(g);
    const BesovSpec hl_spec(3.0 / besov_p - 1.0, besov_p, besov_q, besov_j0);

    SimulationResult result;
    NormSeries& series = result.series;

    const double speed0 = phys_max_speed(state.u);
    result.max_growth = speed0 > 0.0 ? 1.0 : 0.0;

    auto record = [&](const State& st) {
        series.times.push_back(st.time);
        for (const NormRequest& r : norms) {
            const double val = lambda_lr_norm(r.on_omega ? st.omega : st.u, r.l, r.r);
            series.values[norm_label(r)].push_back(val);
        }
        const double eu = l2_norm(st.u), ew = l2_norm(st.omega);
        series.values["energy"].push_back(0.5 * (eu * eu + ew * ew));
        const VectorField lam_w = apply_symbol(st.omega, Symbol::lambda_pow(1.0));
        series.values["besov_low"].push_back(besov_norm_low(part, st.u, hl_spec) +
                                             besov_norm_low(part, lam_w, hl_spec));
        series.values["besov_high"].push_back(besov_norm_high(part, st.u, hl_spec) +
                                              besov_norm_high(part, st.omega, hl_spec));
    };

    std::vector<double> snap_times = config.snapshot_times;
    std::sort(snap_times.begin(), snap_times.end());
    std::size_t next_snap = 0;
    auto flush_snapshots = [&](double window) {
        while (next_snap < snap_times.size() && snap_times[next_snap] <= state.time + window) {
            result.snapshots.push_back({state, config.visc});
            ++next_snap;
        }
    };

    const double t_stop = state.time + config.t_end;
    record(state);
    flush_snapshots(0.5 * config.dt);

    long step_count = 0;
    while (state.time < t_stop - 1e-12 * std::max(1.0, t_stop)) {
        SolverConfig c = config;
        c.dt = std::min(config.dt, t_stop - state.time);
        state = step(state, c);
        ++step_count;

        const bool sampled = step_count % config.sample_every == 0 ||
                             !(state.time < t_stop - 1e-12 * std::max(1.0, t_stop));
        if (sampled) {
            if (speed0 > 0.0) {
                const double growth = phys_max_speed(state.u) / speed0;
                result.max_growth = std::max(result.max_growth, growth);
                if (growth > config.growth_guard) {
                    std::ostringstream msg;
                    msg << "simulate: max|u| grew " << growth << "x over the initial value by t = "
                        << state.time << "; aborting (guard " << config.growth_guard << "x)";
                    throw std::runtime_error(msg.str());
                }
            }
            record(state);
        }
        flush_snapshots(0.5 * c.dt);
    }

    series.check();
    return result;
}

SimulationResult simulate(const Grid3& g, const InitialData& data, const SolverConfig& config,
                          const std::vector<NormRequest>& norms,
                          double besov_p, double besov_q, int besov_j0) {
    return simulate(make_initial_state(g, data), config, norms, besov_p, besov_q, besov_j0);
}

SmallnessReport smallness_report(const State& s, double p, double q, int j0) {
    const DyadicPartition part(s.grid());
    const BesovSpec spec(3.0 / p - 1.0, p, q, j0);
    SmallnessReport rep;
    rep.high_part = besov_norm_high(part, s.u, spec) + besov_norm_high(part, s.omega, spec);
    const VectorField lam_w = apply_symbol(s.omega, Symbol::lambda_pow(1.0));
    rep.low_part = besov_norm_low(part, s.u, spec) + besov_norm_low(part, lam_w, spec);
    rep.x0p = rep.high_part + rep.low_part;
    return rep;
}

}  // namespace mps
