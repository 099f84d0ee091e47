#pragma once

#include <utility>
#include <vector>

#include "mps/besov.hpp"
#include "mps/field.hpp"
#include "mps/initial_data.hpp"
#include "mps/snapshot.hpp"

namespace mps {

enum class Integrator { if_rk2, if_rk4 };

// Time stepping parameters. The stiff linear part is always advanced by the
// exact per-mode propagator; the integrator choice sets the Runge-Kutta
// order used for the dealiased nonlinear terms.
struct SolverConfig {
    double dt = 1e-2;
    double t_end = 1.0;
    Integrator integrator = Integrator::if_rk4;
    std::vector<double> snapshot_times;
    Viscosities visc;
    double cfl = 0.5;
    // linear-only mode for oracle runs: the nonlinear terms are dropped
    bool nonlinear = true;
    // record norms every this many steps (snapshots are exact regardless)
    int sample_every = 1;
    // abort threshold: max|u| growing this factor over its initial value
    double growth_guard = 10.0;

    void validate() const;
};

// advective right sides, dealiased by the 2/3 rule:
//   f = -P div(u (x) u)   (conservative form; equals -P[u . grad u])
//   g = -(u . grad) omega
// Inputs are truncated to the dealias band first, so every product is exact.
std::pair<VectorField, VectorField> nonlinear_rhs(const State& s);

// largest dt the CFL rule admits for this state (inf when u = 0):
// cfl / (max|u| * |xi|_max of the dealias band)
double cfl_dt_max(const State& s, double cfl);

// one integrating-factor Runge-Kutta step of size config.dt; rejects steps
// beyond the CFL bound with the admissible dt in the message
State step(const State& s, const SolverConfig& config);

struct SimulationResult {
    std::vector<Snapshot> snapshots;
    NormSeries series;
    double max_growth = 0.0;  // max over time of max|u|(t) / max|u|(0)
};

// norm columns recorded along a run: L^r of Lambda^l applied to u or omega
struct NormRequest {
    double l = 0.0;
    double r = 2.0;
    bool on_omega = false;
};

// March to t_end recording the requested norms, the energy
// E = (|u|_2^2 + |omega|_2^2)/2, and the low/high split norms behind the
// smallness quantity (columns "besov_low", "besov_high"; see
// smallness_report). Snapshots are emitted at the requested times (hit within
// one step). Initial data must be zero-mean.
SimulationResult simulate(const State& initial, const SolverConfig& config,
                          const std::vector<NormRequest>& norms,
                          double besov_p = 2.0, double besov_q = 1.0, int besov_j0 = 0);

SimulationResult simulate(const Grid3& g, const InitialData& data, const SolverConfig& config,
                          const std::vector<NormRequest>& norms,
                          double besov_p = 2.0, double besov_q = 1.0, int besov_j0 = 0);

// The scalar smallness quantity gating the global regime: the high-frequency
// part of ||(u, omega)|| in the dyadic norm with s = 3/p - 1, plus the
// low-frequency part of ||(u, Lambda omega)||. Pair norms are taken as sums.
struct SmallnessReport {
    double x0p = 0.0;
    double high_part = 0.0;
    double low_part = 0.0;
};
SmallnessReport smallness_report(const State& s, double p, double q, int j0);

}  // namespace mps
