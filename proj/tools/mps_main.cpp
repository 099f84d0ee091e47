// Command line front end for the spectral laboratory: run simulations,
// analyze snapshots, sample the linear dispersion curves, fit decay rates,
// and run the self-check suites. Every subcommand accepts --json for a
// machine-readable summary on stdout and --config for a flat key=value file
// (command line flags win over file entries).

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "mps/besov.hpp"
#include "mps/decay.hpp"
#include "mps/gevrey.hpp"
#include "mps/grid.hpp"
#include "mps/initial_data.hpp"
#include "mps/linear.hpp"
#include "mps/ops.hpp"
#include "mps/snapshot.hpp"
#include "mps/solver.hpp"
#include "mps/verify.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct Common {
    std::string out_dir = ".";
    std::uint64_t seed = 1;
    bool as_json = false;
    std::string config;
};

void add_common(CLI::App* sub, Common& c) {
    sub->add_option("--out-dir", c.out_dir, "directory for CSV and snapshot outputs")
        ->capture_default_str();
    sub->add_option("--seed", c.seed, "random seed")->capture_default_str();
    sub->add_flag("--json", c.as_json, "print a JSON summary to stdout");
    sub->add_option("--config", c.config, "flat key=value option file (command line wins)");
}

std::string trimmed(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

// Flat key=value config support: file entries become --key=value tokens
// injected right after the subcommand name, so flags given explicitly on the
// command line keep priority. '#' starts a comment.
std::vector<std::string> with_config_applied(int argc, char** argv) {
    std::vector<std::string> tokens(argv + 1, argv + argc);
    std::string path;
    for (std::size_t i = 0; i < tokens.size(); ++i) {
        if (tokens[i] == "--config" && i + 1 < tokens.size())
            path = tokens[i + 1];
        else if (tokens[i].rfind("--config=", 0) == 0)
            path = tokens[i].substr(9);
    }
    if (path.empty()) return tokens;

    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot read config file " + path);
    std::vector<std::string> adds;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trimmed(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw std::runtime_error(path + ":" + std::to_string(lineno) +
                                     ": expected key=value");
        const std::string key = trimmed(line.substr(0, eq));
        const std::string value = trimmed(line.substr(eq + 1));
        if (key.empty() || key.rfind("--", 0) == 0)
            throw std::runtime_error(path + ":" + std::to_string(lineno) + ": bad key " + key);
        const std::string flag = "--" + key;
        bool overridden = false;
        for (const auto& t : tokens)
            if (t == flag || t.rfind(flag + "=", 0) == 0) overridden = true;
        if (!overridden) adds.push_back(flag + "=" + value);
    }
    auto pos = tokens.begin();  // insert after the leading subcommand token
    if (pos != tokens.end() && !pos->empty() && (*pos)[0] != '-') ++pos;
    tokens.insert(pos, adds.begin(), adds.end());
    return tokens;
}

struct ViscFlags {
    double nu = 0.5, chi = 0.5, mu = 1.0, kappa = 1.0;
    mps::Viscosities get() const { return {nu, chi, mu, kappa}; }
};

void add_visc(CLI::App* sub, ViscFlags& v) {
    sub->add_option("--nu", v.nu, "kinematic viscosity")->capture_default_str();
    sub->add_option("--chi", v.chi, "vortex (micro-rotation) viscosity")->capture_default_str();
    sub->add_option("--mu", v.mu, "spin diffusion")->capture_default_str();
    sub->add_option("--kappa", v.kappa, "spin divergence penalty")->capture_default_str();
}

double parse_r(const std::string& s) {
    if (s == "inf") return std::numeric_limits<double>::infinity();
    return std::stod(s);
}

// "u:0:2" or "w:1:inf" -> (on_omega, l, r)
void parse_series(const std::string& text, bool& on_omega, double& l, double& r) {
    const auto c1 = text.find(':');
    const auto c2 = text.find(':', c1 + 1);
    if (c1 == std::string::npos || c2 == std::string::npos)
        throw std::invalid_argument("series spec must look like u:0:2 or w:1:inf, got " + text);
    const std::string field = text.substr(0, c1);
    if (field != "u" && field != "w")
        throw std::invalid_argument("series field must be u or w, got " + field);
    on_omega = field == "w";
    l = std::stod(text.substr(c1 + 1, c2 - c1 - 1));
    r = parse_r(text.substr(c2 + 1));
}

std::string out_path(const Common& c, const std::string& name) {
    fs::create_directories(c.out_dir);
    return (fs::path(c.out_dir) / name).string();
}

void emit(const Common& c, const json& j, const std::string& human) {
    if (c.as_json)
        std::cout << j.dump(2) << "\n";
    else
        std::cout << human;
}

double q_or_nan(double v) { return std::isfinite(v) ? v : std::numeric_limits<double>::quiet_NaN(); }

json fit_to_json(const mps::SeriesFitReport& f) {
    json j{{"label", f.label},
           {"l", f.req.l},
           {"r", std::isinf(f.req.r) ? json("inf") : json(f.req.r)},
           {"field", f.req.which == mps::FieldChoice::u ? "u" : "w"},
           {"fitted", f.fitted},
           {"spread", f.spread},
           {"stderr", f.stderr_mean},
           {"monotone_after_1", f.monotone_after_1},
           {"window_robust", f.window_robust}};
    if (f.has_prediction) {
        j["predicted"] = f.predicted;
        j["tolerance"] = f.tolerance;
        j["pass"] = f.within_tolerance;
    }
    return j;
}

int run_simulate(const Common& common, const ViscFlags& visc, int n, double box,
                 const std::string& kind, double amplitude, double epsilon, double sigma, int band,
                 double omega_ratio, bool coherent, double t_end, double dt,
                 const std::string& integrator, double cfl, bool linear_only, int sample_every,
                 const std::vector<double>& snapshot_at, const std::vector<std::string>& norm_specs,
                 double besov_p, double besov_q, int besov_j0) {
    const mps::Grid3 g(n, box);
    mps::InitialData data;
    if (kind == "taylor-green")
        data.kind = mps::InitialData::Kind::taylor_green;
    else if (kind == "kato")
        data.kind = mps::InitialData::Kind::kato_oscillating;
    else if (kind == "random-slope")
        data.kind = mps::InitialData::Kind::random_slope;
    else
        throw std::invalid_argument("unknown initial data kind: " + kind);
    data.amplitude = amplitude;
    data.epsilon = epsilon;
    data.sigma = sigma;
    data.band = band > 0 ? band : g.dealias_kmax();
    data.omega_ratio = omega_ratio;
    data.coherent_phases = coherent;
    data.seed = common.seed;

    mps::SolverConfig cfg;
    cfg.dt = dt;
    cfg.t_end = t_end;
    cfg.integrator =
        integrator == "rk2" ? mps::Integrator::if_rk2 : mps::Integrator::if_rk4;
    cfg.snapshot_times = snapshot_at;
    cfg.visc = visc.get();
    cfg.cfl = cfl;
    cfg.nonlinear = !linear_only;
    cfg.sample_every = sample_every;

    std::vector<mps::NormRequest> norms;
    for (const std::string& spec : norm_specs) {
        mps::NormRequest r;
        parse_series(spec, r.on_omega, r.l, r.r);
        norms.push_back(r);
    }

    const mps::SimulationResult result =
        mps::simulate(g, data, cfg, norms, besov_p, besov_q, besov_j0);

    const std::string csv = out_path(common, "series.csv");
    {
        std::ofstream out(csv);
        mps::write_norm_series_csv(out, result.series);
    }
    std::vector<std::string> snap_paths;
    for (const mps::Snapshot& snap : result.snapshots) {
        char name[64];
        std::snprintf(name, sizeof(name), "snapshot_t%g.bin", snap.state.time);
        const std::string path = out_path(common, name);
        mps::save_snapshot(snap.state, snap.visc, path);
        snap_paths.push_back(path);
    }

    const auto& energy = result.series.values.at("energy");
    json j{{"grid", {{"n", n}, {"box", box}}},
           {"t_end", t_end},
           {"steps", result.series.times.size()},
           {"energy_initial", energy.front()},
           {"energy_final", energy.back()},
           {"max_growth", result.max_growth},
           {"series_csv", csv},
           {"snapshots", snap_paths}};
    char line[256];
    std::snprintf(line, sizeof(line),
                  "ran to t = %g: energy %.6g -> %.6g, max growth %.3f\nseries: %s\n", t_end,
                  energy.front(), energy.back(), result.max_growth, csv.c_str());
    std::string human(line);
    for (const auto& p : snap_paths) human += "snapshot: " + p + "\n";
    emit(common, j, human);
    return 0;
}

int run_analyze_besov(const Common& common, const std::string& snapshot, double p, double q,
                      int j0) {
    const mps::Snapshot snap = mps::load_snapshot(snapshot);
    const mps::SmallnessReport rep = mps::smallness_report(snap.state, p, q, j0);

    const std::string csv = out_path(common, "besov.csv");
    {
        std::ofstream out(csv);
        out << "time,p,q,j0,x0p,low_part,high_part\n";
        out.precision(12);
        out << snap.state.time << "," << p << "," << q << "," << j0 << "," << rep.x0p << ","
            << rep.low_part << "," << rep.high_part << "\n";
    }
    json j{{"snapshot", snapshot},
           {"time", snap.state.time},
           {"n", snap.state.grid().n},
           {"box", snap.state.grid().L},
           {"p", p},
           {"q", q},
           {"j0", j0},
           {"x0p", rep.x0p},
           {"low_part", rep.low_part},
           {"high_part", rep.high_part},
           {"csv", csv}};
    char line[256];
    std::snprintf(line, sizeof(line),
                  "t = %g: smallness = %.6g (low %.6g + high %.6g), p = %g, q = %g, j0 = %d\n",
                  snap.state.time, rep.x0p, rep.low_part, rep.high_part, p, q, j0);
    emit(common, j, line);
    return 0;
}

int run_linear_spectrum(const Common& common, const ViscFlags& visc, double xi_min, double xi_max,
                        int points) {
    if (!(xi_min > 0.0 && xi_max > xi_min) || points < 2)
        throw std::invalid_argument("need 0 < xi-min < xi-max and at least 2 points");
    std::vector<double> grid(points);
    for (int i = 0; i < points; ++i)
        grid[i] = xi_min * std::pow(xi_max / xi_min, double(i) / double(points - 1));
    const std::vector<mps::SpectrumRow> rows = mps::spectrum_rows(visc.get(), grid);

    const std::string csv = out_path(common, "spectrum.csv");
    {
        std::ofstream out(csv);
        out << "xi,lambda_plus,lambda_minus,ratio_lowfreq,ratio_highfreq\n";
        out.precision(12);
        for (const auto& r : rows)
            out << r.xi << "," << r.lambda_plus << "," << r.lambda_minus << ","
                << r.ratio_lowfreq << "," << r.ratio_highfreq << "\n";
    }

    json j{{"csv", csv}, {"points", points}};
    json jrows = json::array();
    for (const auto& r : rows)
        jrows.push_back({{"xi", r.xi},
                         {"lambda_plus", r.lambda_plus},
                         {"lambda_minus", r.lambda_minus},
                         {"ratio_lowfreq", r.ratio_lowfreq},
                         {"ratio_highfreq", r.ratio_highfreq}});
    j["rows"] = jrows;
    std::string human;
    if (std::log10(xi_max / xi_min) >= 4.0) {
        const mps::AsymptoticsReport rep = mps::asymptotics_report(visc.get(), grid);
        j["asymptotics"] = {{"low_plus_ratio", rep.low_plus_ratio},
                            {"low_minus_ratio", rep.low_minus_ratio},
                            {"high_prod_ratio", rep.high_prod_ratio},
                            {"high_sum_ratio", rep.high_sum_ratio},
                            {"low_ok", rep.low_ok},
                            {"high_ok", rep.high_ok}};
        char line[256];
        std::snprintf(line, sizeof(line),
                      "limit laws at the grid ends: low %s (plus %.4f, minus %.4f), "
                      "high %s (product %.4f, sum %.4f)\n",
                      rep.low_ok ? "ok" : "OFF", rep.low_plus_ratio, rep.low_minus_ratio,
                      rep.high_ok ? "ok" : "OFF", rep.high_prod_ratio, rep.high_sum_ratio);
        human = line;
    }
    human += "spectrum: " + csv + " (" + std::to_string(points) + " points)\n";
    emit(common, j, human);
    return 0;
}

int run_decay_fit(const Common& common, const ViscFlags& visc, int n, double box, double sigma,
                  double p, const std::vector<std::string>& request_specs, double t_lo,
                  double t_hi, int samples, int repetitions, double amplitude, double omega_ratio,
                  bool coherent, bool nonlinear, double dt, int cutoff_j0, int band) {
    mps::ExperimentSpec spec;
    spec.grid = mps::Grid3(n, box);
    spec.visc = visc.get();
    spec.sigma = sigma;
    spec.p = p;
    for (const std::string& text : request_specs) {
        mps::ExperimentRequest req;
        bool on_omega = false;
        parse_series(text, on_omega, req.l, req.r);
        req.which = on_omega ? mps::FieldChoice::omega : mps::FieldChoice::u;
        spec.requests.push_back(req);
    }
    spec.t_lo = t_lo;
    spec.t_hi = t_hi;
    spec.samples = samples;
    spec.repetitions = repetitions;
    spec.amplitude = amplitude;
    spec.omega_ratio = omega_ratio;
    spec.coherent_phases = coherent;
    spec.band = band;
    spec.cutoff_j0 = cutoff_j0;
    spec.linear_only = !nonlinear;
    spec.dt = dt;
    spec.seed = common.seed;

    const mps::DecayExperimentReport rep = mps::run_decay_experiment(spec);
    if (rep.degenerate) {
        emit(common, json{{"degenerate", true}}, "degenerate: zero data, nothing to fit\n");
        return 0;
    }

    const std::string csv = out_path(common, "decay_fits.csv");
    {
        std::ofstream out(csv);
        out << "label,field,l,r,predicted,fitted,spread,stderr,tolerance,verdict,"
               "monotone_after_1,window_robust\n";
        out.precision(12);
        for (const auto& f : rep.fits) {
            out << f.label << "," << (f.req.which == mps::FieldChoice::u ? "u" : "w") << ","
                << f.req.l << "," << f.req.r << ",";
            if (f.has_prediction)
                out << f.predicted << "," << f.fitted << "," << f.spread << "," << f.stderr_mean
                    << "," << f.tolerance << "," << (f.within_tolerance ? "pass" : "fail");
            else
                out << "," << f.fitted << "," << f.spread << "," << f.stderr_mean << ",,";
            out << "," << (f.monotone_after_1 ? 1 : 0) << "," << (f.window_robust ? 1 : 0)
                << "\n";
        }
    }

    json j{{"degenerate", false},
           {"box_horizon", rep.box_horizon},
           {"window", {t_lo, t_hi}},
           {"low_freq_exponent", rep.low_freq_exponent},
           {"high_freq_exponent", rep.high_freq_exponent},
           {"csv", csv}};
    json jfits = json::array();
    for (const auto& f : rep.fits) jfits.push_back(fit_to_json(f));
    j["fits"] = jfits;
    if (rep.has_damping_gap) j["damping_gap"] = rep.damping_gap;

    std::string human = "series        predicted     fitted     spread     stderr   verdict\n";
    bool all_pass = true;
    for (const auto& f : rep.fits) {
        char line[160];
        if (f.has_prediction) {
            std::snprintf(line, sizeof(line), "%-12s  %9.4f  %9.4f  %9.4f  %9.4f   %s\n",
                          f.label.c_str(), f.predicted, f.fitted, f.spread, f.stderr_mean,
                          f.within_tolerance ? "pass" : "FAIL");
            all_pass = all_pass && f.within_tolerance;
        } else {
            std::snprintf(line, sizeof(line), "%-12s  %9s  %9.4f  %9.4f  %9.4f   (no verdict)\n",
                          f.label.c_str(), "-", f.fitted, f.spread, f.stderr_mean);
        }
        human += line;
        if (!f.window_robust) human += "    note: " + f.label + " is transient-contaminated\n";
    }
    {
        char line[160];
        std::snprintf(line, sizeof(line),
                      "low/high split slopes: %.4f / %.4f; box horizon %.4g\n",
                      rep.low_freq_exponent, rep.high_freq_exponent, rep.box_horizon);
        human += line;
        if (rep.has_damping_gap) {
            std::snprintf(line, sizeof(line), "damping gap (spin minus velocity): %+.4f\n",
                          rep.damping_gap);
            human += line;
        }
    }
    human += "fits: " + csv + "\n";
    emit(common, j, human);
    return all_pass ? 0 : 1;
}

int run_gevrey_radius(const Common& common, const std::string& snapshot,
                      const std::string& shells, const std::string& field) {
    const auto dots = shells.find("..");
    if (dots == std::string::npos)
        throw std::invalid_argument("--shells wants a range like 0..4, got " + shells);
    const int j_lo = std::stoi(shells.substr(0, dots));
    const int j_hi = std::stoi(shells.substr(dots + 2));

    const mps::Snapshot snap = mps::load_snapshot(snapshot);
    const mps::VectorField& v = field == "omega" ? snap.state.omega : snap.state.u;
    if (field != "u" && field != "omega")
        throw std::invalid_argument("--field must be u or omega, got " + field);
    const mps::RadiusFit fit = mps::radius_fit(v, j_lo, j_hi);

    json j{{"snapshot", snapshot},
           {"time", snap.state.time},
           {"field", field},
           {"radius", fit.radius_estimate},
           {"residual", fit.residual},
           {"window", {fit.j_lo, fit.j_hi}},
           {"shells_used", fit.shells_used}};
    char line[192];
    std::snprintf(line, sizeof(line),
                  "t = %g: analyticity radius of %s ~ %.6g (residual %.3g, shells %d..%d, "
                  "%d used)\n",
                  snap.state.time, field.c_str(), fit.radius_estimate, fit.residual, fit.j_lo,
                  fit.j_hi, fit.shells_used);
    emit(common, j, line);
    return 0;
}

int run_verify(const Common& common, const std::string& suite, int n, bool tamper) {
    mps::VerifyOptions opt;
    opt.n = n;
    opt.seed = common.seed;
    opt.tamper_eigenvalues = tamper;
    const mps::VerifyReport rep = mps::verify(mps::parse_suite(suite), opt);

    json checks = json::array();
    for (const auto& c : rep.checks)
        checks.push_back({{"name", c.name},
                          {"pass", c.pass},
                          {"measured", q_or_nan(c.measured)},
                          {"bound", c.bound},
                          {"detail", c.detail}});
    json j{{"suite", rep.suite},
           {"all_pass", rep.all_pass},
           {"seconds", rep.seconds},
           {"checks", checks}};
    std::string human;
    for (const auto& c : rep.checks) {
        char line[224];
        std::snprintf(line, sizeof(line), "%-34s %s  (measured %.3g, bound %.3g)\n",
                      c.name.c_str(), c.pass ? "pass" : "FAIL", c.measured, c.bound);
        human += line;
    }
    char tail[96];
    std::snprintf(tail, sizeof(tail), "%s: %s in %.1fs\n", rep.suite.c_str(),
                  rep.all_pass ? "all checks pass" : "FAILURES", rep.seconds);
    human += tail;
    emit(common, j, human);
    return rep.all_pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"pseudo-spectral laboratory for the coupled velocity-spin system on a torus"};
    app.require_subcommand(1);

    // simulate
    auto* sim = app.add_subcommand("simulate", "run the solver and record norms and snapshots");
    Common sim_common;
    ViscFlags sim_visc;
    int sim_n = 64;
    double sim_box = 2.0 * mps::pi;
    std::string sim_kind = "taylor-green";
    double sim_amplitude = 1.0, sim_epsilon = 0.125, sim_sigma = 1.5, sim_omega_ratio = 1.0;
    int sim_band = 0;
    bool sim_coherent = false, sim_linear_only = false;
    double sim_t_end = 1.0, sim_dt = 0.01, sim_cfl = 0.5;
    std::string sim_integrator = "rk4";
    int sim_sample_every = 1;
    std::vector<double> sim_snapshot_at;
    std::vector<std::string> sim_norms = {"u:0:2", "w:0:2"};
    double sim_besov_p = 2.0, sim_besov_q = 1.0;
    int sim_besov_j0 = 0;
    add_common(sim, sim_common);
    add_visc(sim, sim_visc);
    sim->add_option("--n", sim_n, "grid resolution per axis")->capture_default_str();
    sim->add_option("--box", sim_box, "box side length")->capture_default_str();
    sim->add_option("--kind", sim_kind, "initial data: taylor-green, kato, random-slope")
        ->capture_default_str();
    sim->add_option("--amplitude", sim_amplitude, "initial L2 size of u")->capture_default_str();
    sim->add_option("--epsilon", sim_epsilon, "oscillation scale for kato data")
        ->capture_default_str();
    sim->add_option("--sigma", sim_sigma, "spectral envelope slope for random-slope data")
        ->capture_default_str();
    sim->add_option("--band", sim_band, "highest filled mode (0 = dealias band)")
        ->capture_default_str();
    sim->add_option("--omega-ratio", sim_omega_ratio, "spin field size relative to u")
        ->capture_default_str();
    sim->add_flag("--coherent", sim_coherent, "align random phases at one point");
    sim->add_option("--t-end", sim_t_end, "final time")->capture_default_str();
    sim->add_option("--dt", sim_dt, "time step")->capture_default_str();
    sim->add_option("--integrator", sim_integrator, "rk2 or rk4")->capture_default_str();
    sim->add_option("--cfl", sim_cfl, "CFL safety factor")->capture_default_str();
    sim->add_flag("--linear-only", sim_linear_only, "drop the nonlinear terms");
    sim->add_option("--sample-every", sim_sample_every, "record norms every k steps")
        ->capture_default_str();
    sim->add_option("--snapshot-at", sim_snapshot_at, "times to save full snapshots");
    sim->add_option("--norm", sim_norms, "norm columns to record, e.g. u:0:2 w:1:inf")
        ->capture_default_str();
    sim->add_option("--besov-p", sim_besov_p, "Lebesgue base of the smallness columns")
        ->capture_default_str();
    sim->add_option("--besov-q", sim_besov_q, "summation exponent of the smallness columns")
        ->capture_default_str();
    sim->add_option("--besov-j0", sim_besov_j0, "low/high split block of the smallness columns")
        ->capture_default_str();

    // analyze-besov
    auto* ab = app.add_subcommand("analyze-besov", "smallness quantity of a saved snapshot");
    Common ab_common;
    std::string ab_snapshot;
    double ab_p = 2.0, ab_q = 1.0;
    int ab_j0 = 0;
    add_common(ab, ab_common);
    ab->add_option("--snapshot", ab_snapshot, "snapshot file to analyze")->required();
    ab->add_option("--p", ab_p, "Lebesgue base")->capture_default_str();
    ab->add_option("--q", ab_q, "summation exponent")->capture_default_str();
    ab->add_option("--j0", ab_j0, "low/high split block")->capture_default_str();

    // linear-spectrum
    auto* ls = app.add_subcommand("linear-spectrum", "decay rates of the linear system vs |xi|");
    Common ls_common;
    ViscFlags ls_visc;
    double ls_xi_min = 1e-3, ls_xi_max = 1e3;
    int ls_points = 121;
    add_common(ls, ls_common);
    add_visc(ls, ls_visc);
    ls->add_option("--xi-min", ls_xi_min, "smallest frequency")->capture_default_str();
    ls->add_option("--xi-max", ls_xi_max, "largest frequency")->capture_default_str();
    ls->add_option("--points", ls_points, "geometric grid size")->capture_default_str();

    // decay-fit
    auto* df = app.add_subcommand("decay-fit", "fit decay exponents against predicted rates");
    Common df_common;
    ViscFlags df_visc;
    int df_n = 64;
    double df_box = 16.0 * mps::pi, df_sigma = 1.5, df_p = 2.0;
    std::vector<std::string> df_requests = {"u:0:2", "w:0:2"};
    double df_t_lo = 1.0, df_t_hi = 30.0;
    int df_samples = 25, df_repetitions = 5;
    double df_amplitude = 1.0, df_omega_ratio = 1.0, df_dt = 0.05;
    bool df_coherent = false, df_nonlinear = false;
    int df_cutoff_j0 = 0, df_band = 0;
    add_common(df, df_common);
    add_visc(df, df_visc);
    df->add_option("--n", df_n, "grid resolution per axis")->capture_default_str();
    df->add_option("--box", df_box, "box side length")->capture_default_str();
    df->add_option("--sigma", df_sigma, "spectral envelope slope of the data")
        ->capture_default_str();
    df->add_option("--p", df_p, "Lebesgue scale the envelope is measured against")
        ->capture_default_str();
    df->add_option("--request", df_requests, "norms to fit, e.g. u:0:2 w:0:2 u:1:inf")
        ->capture_default_str();
    df->add_option("--t-lo", df_t_lo, "fit window start")->capture_default_str();
    df->add_option("--t-hi", df_t_hi, "fit window end")->capture_default_str();
    df->add_option("--samples", df_samples, "sample count on the geometric time grid")
        ->capture_default_str();
    df->add_option("--repetitions", df_repetitions, "independent random draws to average")
        ->capture_default_str();
    df->add_option("--amplitude", df_amplitude, "initial L2 size of u")->capture_default_str();
    df->add_option("--omega-ratio", df_omega_ratio, "spin field size relative to u")
        ->capture_default_str();
    df->add_flag("--coherent", df_coherent,
                 "align random phases (needed to see the Lebesgue exponent dependence)");
    df->add_flag("--nonlinear", df_nonlinear, "step the full system instead of the exact flow");
    df->add_option("--dt", df_dt, "time step for nonlinear runs")->capture_default_str();
    df->add_option("--cutoff-j0", df_cutoff_j0, "block index of the low/high split")
        ->capture_default_str();
    df->add_option("--band", df_band, "highest filled mode (0 = dealias band)")
        ->capture_default_str();

    // gevrey-radius
    auto* gr = app.add_subcommand("gevrey-radius", "analyticity radius fit of a saved snapshot");
    Common gr_common;
    std::string gr_snapshot, gr_shells = "0..4", gr_field = "u";
    add_common(gr, gr_common);
    gr->add_option("--snapshot", gr_snapshot, "snapshot file to analyze")->required();
    gr->add_option("--shells", gr_shells, "octave shell range j0..j1")->capture_default_str();
    gr->add_option("--field", gr_field, "u or omega")->capture_default_str();

    // verify
    auto* vf = app.add_subcommand("verify", "run a self-check suite");
    Common vf_common;
    std::string vf_suite = "all";
    int vf_n = 64;
    bool vf_tamper = false;
    add_common(vf, vf_common);
    vf->add_option("--suite", vf_suite, "core, lp, linear, solver, gevrey, or all")
        ->capture_default_str();
    vf->add_option("--n", vf_n, "resolution for field-based checks")->capture_default_str();
    vf->add_flag("--tamper-eigenvalues", vf_tamper,
                 "negative-control fixture: corrupt the eigenvalue formula to prove "
                 "failures are caught")
        ->group("Test fixtures");

    try {
        std::vector<std::string> args = with_config_applied(argc, argv);
        std::reverse(args.begin(), args.end());  // CLI11's vector parse wants reversed tokens
        app.parse(std::move(args));
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }

    try {
        if (sim->parsed())
            return run_simulate(sim_common, sim_visc, sim_n, sim_box, sim_kind, sim_amplitude,
                                sim_epsilon, sim_sigma, sim_band, sim_omega_ratio, sim_coherent,
                                sim_t_end, sim_dt, sim_integrator, sim_cfl, sim_linear_only,
                                sim_sample_every, sim_snapshot_at, sim_norms, sim_besov_p,
                                sim_besov_q, sim_besov_j0);
        if (ab->parsed()) return run_analyze_besov(ab_common, ab_snapshot, ab_p, ab_q, ab_j0);
        if (ls->parsed())
            return run_linear_spectrum(ls_common, ls_visc, ls_xi_min, ls_xi_max, ls_points);
        if (df->parsed())
            return run_decay_fit(df_common, df_visc, df_n, df_box, df_sigma, df_p, df_requests,
                                 df_t_lo, df_t_hi, df_samples, df_repetitions, df_amplitude,
                                 df_omega_ratio, df_coherent, df_nonlinear, df_dt, df_cutoff_j0,
                                 df_band);
        if (gr->parsed()) return run_gevrey_radius(gr_common, gr_snapshot, gr_shells, gr_field);
        if (vf->parsed()) return run_verify(vf_common, vf_suite, vf_n, vf_tamper);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
