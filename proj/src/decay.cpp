#include "mps/decay.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>

#include "mps/dyadic.hpp"
#include "mps/initial_data.hpp"
#include "mps/linear.hpp"
#include "mps/ops.hpp"

namespace mps {

namespace {

const double inf_v = std::numeric_limits<double>::infinity();

double sigma_tilde(double sigma, double r, double p) { return sigma - 3.0 / r + 3.0 / p; }

}  // namespace

double predicted_exponent(double l, double r, double p, double sigma, FieldChoice which) {
    if (!(p >= 1.0) || std::isinf(p))
        throw std::invalid_argument("predicted_exponent: p must lie in [1, inf)");
    if (!(r >= p)) throw std::invalid_argument("predicted_exponent: needs r >= p");
    if (l < 0.0) throw std::invalid_argument("predicted_exponent: derivative order l must be >= 0");
    const double pc = p / (p - 1.0);  // conjugate exponent, inf at p = 1
    const double hi = std::min(1.0 + 3.0 / p, 1.0 + 3.0 / pc);
    if (!(sigma > 1.0 - 3.0 / p && sigma < hi))
        throw std::invalid_argument(
            "predicted_exponent: sigma outside (1 - 3/p, min(1 + 3/p, 1 + 3/p'))");
    const double st = sigma_tilde(sigma, r, p);
    if (which == FieldChoice::u) {
        if (!(l > -st))
            throw std::invalid_argument("predicted_exponent: velocity rate needs l > -sigma_tilde");
        return -0.5 * (st + l);
    }
    if (!(l > -st + 1.0))
        throw std::invalid_argument("predicted_exponent: spin rate needs l > 1 - sigma_tilde");
    return -0.5 * (st - 1.0 + l);
}

PowerLawFit fit_power_law(const std::vector<double>& times, const std::vector<double>& values,
                          double t_lo, double t_hi) {
    if (times.size() != values.size())
        throw std::invalid_argument("fit_power_law: times and values disagree in length");
    std::vector<double> xs, ys;
    for (std::size_t i = 0; i < times.size(); ++i) {
        if (times[i] < t_lo || times[i] > t_hi) continue;
        if (!(values[i] > 0.0))
            throw std::invalid_argument("fit_power_law: nonpositive sample in the fit window");
        xs.push_back(std::log(times[i]));
        ys.push_back(std::log(values[i]));
    }
    if (xs.size() < 5)
        throw std::invalid_argument("fit_power_law: need at least five samples in the window");

    const double n = static_cast<double>(xs.size());
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        mx += xs[i];
        my += ys[i];
    }
    mx /= n;
    my /= n;
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sxx += (xs[i] - mx) * (xs[i] - mx);
        sxy += (xs[i] - mx) * (ys[i] - my);
    }
    const double slope = sxy / sxx;
    const double intercept = my - slope * mx;
    double ssr = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double e = ys[i] - (intercept + slope * xs[i]);
        ssr += e * e;
    }

    PowerLawFit fit;
    fit.exponent = slope;
    fit.stderr_slope = std::sqrt(ssr / (n - 2.0) / sxx);
    fit.t_lo = t_lo;
    fit.t_hi = t_hi;
    fit.n_points = static_cast<int>(xs.size());
    return fit;
}

PowerLawFit fit_power_law(const NormSeries& series, const std::string& label, double t_lo,
                          double t_hi) {
    const auto it = series.values.find(label);
    if (it == series.values.end())
        throw std::invalid_argument("fit_power_law: no series named " + label);
    return fit_power_law(series.times, it->second, t_lo, t_hi);
}

double ExperimentSpec::box_horizon() const {
    return (grid.L / (2.0 * pi)) * (grid.L / (2.0 * pi)) / visc.nu;
}

void ExperimentSpec::validate() const {
    for (const ExperimentRequest& req : requests) {
        if (req.r >= p) {
            predicted_exponent(req.l, req.r, p, sigma, req.which);  // throws on a bad request
        } else {
            // fit-only request below the data scale: no predicted rate exists,
            // the series is still measured and fitted
            if (!(req.r >= 1.0)) throw std::invalid_argument("experiment: needs r >= 1");
            if (req.l < 0.0) throw std::invalid_argument("experiment: derivative order l >= 0");
        }
    }
    if (samples < 5) throw std::invalid_argument("experiment: needs at least 5 samples");
    if (repetitions < 1) throw std::invalid_argument("experiment: needs at least 1 repetition");
    if (!(t_lo > 0.0 && t_hi > t_lo)) throw std::invalid_argument("experiment: bad fit window");
    if (!linear_only && !(dt > 0.0)) throw std::invalid_argument("experiment: dt must be positive");
    if (amplitude < 0.0) throw std::invalid_argument("experiment: amplitude must be >= 0");
    if (band < 0 || band > grid.dealias_kmax())
        throw std::invalid_argument("experiment: band outside the alias-free range");
    if (t_hi > 0.5 * box_horizon())
        throw std::invalid_argument(
            "experiment: fit window reaches past half the finite-box horizon (L/2pi)^2/nu; "
            "algebraic decay is not observable there");
}

double decay_tolerance(bool linear_only) { return linear_only ? 0.05 : 0.15; }

std::string decay_label(const ExperimentRequest& req) {
    char buf[64];
    const char* f = req.which == FieldChoice::u ? "u" : "w";
    if (std::isinf(req.r))
        std::snprintf(buf, sizeof(buf), "%s_l%g_rinf", f, req.l);
    else
        std::snprintf(buf, sizeof(buf), "%s_l%g_r%g", f, req.l, req.r);
    return buf;
}

namespace {

double request_norm(const State& s, const ExperimentRequest& req) {
    const VectorField& f = req.which == FieldChoice::u ? s.u : s.omega;
    if (req.l == 0.0) return lp_norm(f, req.r);
    return lp_norm(apply_symbol(f, Symbol::lambda_pow(req.l)), req.r);
}

double mean_of(const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x;
    return s / static_cast<double>(v.size());
}

double spread_of(const std::vector<double>& v, double mean) {
    double s = 0.0;
    for (double x : v) s += (x - mean) * (x - mean);
    return std::sqrt(s / static_cast<double>(v.size()));
}

bool nonincreasing_after(const std::vector<double>& ts, const std::vector<double>& vs,
                         double t_from) {
    for (std::size_t i = 0; i + 1 < ts.size(); ++i) {
        if (ts[i] < t_from) continue;
        if (vs[i + 1] > vs[i] * (1.0 + 1e-9)) return false;
    }
    return true;
}

}  // namespace

DecayExperimentReport run_decay_experiment(const ExperimentSpec& spec) {
    spec.validate();

    DecayExperimentReport rep;
    rep.box_horizon = spec.box_horizon();
    rep.times.resize(spec.samples);
    for (int i = 0; i < spec.samples; ++i)
        rep.times[i] =
            spec.t_lo * std::pow(spec.t_hi / spec.t_lo,
                                 static_cast<double>(i) / static_cast<double>(spec.samples - 1));

    if (spec.amplitude == 0.0) {
        rep.degenerate = true;
        return rep;
    }

    // snapshots of a stepped run land within half a step of the requested
    // times; widen the fit window by that slack so edge samples stay in
    const double slack = spec.linear_only ? 1e-9 * spec.t_lo : 0.51 * spec.dt;
    const double win_lo = spec.t_lo - slack;
    const double win_hi = spec.t_hi + slack;

    const DyadicPartition part(spec.grid);
    const std::size_t nreq = spec.requests.size();

    std::vector<std::vector<double>> slopes(nreq), errors(nreq);
    std::vector<bool> monotone(nreq, true), robust(nreq, true);
    std::vector<double> lo_slopes, hi_slopes;

    for (int repn = 0; repn < spec.repetitions; ++repn) {
        InitialData data;
        data.kind = InitialData::Kind::random_slope;
        data.amplitude = spec.amplitude;
        data.sigma = spec.sigma;
        data.band = spec.band > 0 ? spec.band : spec.grid.dealias_kmax();
        data.omega_ratio = spec.omega_ratio;
        data.coherent_phases = spec.coherent_phases;
        data.seed = spec.seed + static_cast<std::uint64_t>(repn);
        const State s0 = make_initial_state(spec.grid, data);

        std::vector<State> states;
        states.reserve(rep.times.size());
        if (spec.linear_only) {
            for (double t : rep.times) states.push_back(linear_propagate(s0, t, spec.visc));
        } else {
            SolverConfig cfg;
            cfg.dt = spec.dt;
            cfg.t_end = spec.t_hi;
            cfg.snapshot_times = rep.times;
            cfg.visc = spec.visc;
            cfg.sample_every = 1 << 20;  // norms are computed from snapshots below
            SimulationResult sim = simulate(s0, cfg, {}, spec.p, 1.0, spec.cutoff_j0);
            for (Snapshot& sn : sim.snapshots) states.push_back(std::move(sn.state));
        }

        std::vector<double> ts(states.size());
        for (std::size_t i = 0; i < states.size(); ++i) ts[i] = states[i].time;

        for (std::size_t q = 0; q < nreq; ++q) {
            std::vector<double> vals(states.size());
            for (std::size_t i = 0; i < states.size(); ++i)
                vals[i] = request_norm(states[i], spec.requests[q]);
            const PowerLawFit main = fit_power_law(ts, vals, win_lo, win_hi);
            slopes[q].push_back(main.exponent);
            errors[q].push_back(main.stderr_slope);
            if (!nonincreasing_after(ts, vals, 1.0)) monotone[q] = false;
            try {
                const PowerLawFit alt = fit_power_law(ts, vals, 2.0 * win_lo, win_hi);
                if (std::abs(alt.exponent - main.exponent) > 3.0 * main.stderr_slope + 1e-9)
                    robust[q] = false;
            } catch (const std::invalid_argument&) {
                robust[q] = false;  // too few points left after the octave shift
            }
        }

        std::vector<double> lo_vals(states.size()), hi_vals(states.size());
        for (std::size_t i = 0; i < states.size(); ++i) {
            const VectorSplitParts parts = frequency_split(part, states[i].u, spec.cutoff_j0);
            lo_vals[i] = l2_norm(parts.low);
            hi_vals[i] = l2_norm(parts.high);
        }
        // either side of the split can be empty on coarse grids (no modes above
        // or below the cutoff octave); report NaN for that side instead of failing
        const auto all_positive = [](const std::vector<double>& v) {
            return std::all_of(v.begin(), v.end(), [](double x) { return x > 0.0; });
        };
        lo_slopes.push_back(all_positive(lo_vals)
                                ? fit_power_law(ts, lo_vals, win_lo, win_hi).exponent
                                : std::numeric_limits<double>::quiet_NaN());
        hi_slopes.push_back(all_positive(hi_vals)
                                ? fit_power_law(ts, hi_vals, win_lo, win_hi).exponent
                                : std::numeric_limits<double>::quiet_NaN());
    }

    for (std::size_t q = 0; q < nreq; ++q) {
        SeriesFitReport fit;
        fit.req = spec.requests[q];
        fit.label = decay_label(spec.requests[q]);
        fit.has_prediction = spec.requests[q].r >= spec.p;
        fit.predicted = fit.has_prediction
                            ? predicted_exponent(spec.requests[q].l, spec.requests[q].r, spec.p,
                                                 spec.sigma, spec.requests[q].which)
                            : std::numeric_limits<double>::quiet_NaN();
        fit.fitted = mean_of(slopes[q]);
        fit.spread = spread_of(slopes[q], fit.fitted);
        fit.stderr_mean = mean_of(errors[q]);
        fit.tolerance = decay_tolerance(spec.linear_only);
        fit.within_tolerance =
            fit.has_prediction && std::abs(fit.fitted - fit.predicted) <= fit.tolerance;
        fit.monotone_after_1 = monotone[q];
        fit.window_robust = robust[q];
        rep.fits.push_back(fit);
    }
    rep.low_freq_exponent = mean_of(lo_slopes);
    rep.high_freq_exponent = mean_of(hi_slopes);

    for (std::size_t qu = 0; qu < nreq && !rep.has_damping_gap; ++qu) {
        if (spec.requests[qu].which != FieldChoice::u) continue;
        for (std::size_t qw = 0; qw < nreq; ++qw) {
            if (spec.requests[qw].which != FieldChoice::omega) continue;
            if (spec.requests[qw].l != spec.requests[qu].l) continue;
            if (spec.requests[qw].r != spec.requests[qu].r) continue;
            rep.damping_gap = rep.fits[qw].fitted - rep.fits[qu].fitted;
            rep.has_damping_gap = true;
            break;
        }
    }
    return rep;
}

}  // namespace mps
