#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "mps/besov.hpp"
#include "mps/dyadic.hpp"
#include "mps/field.hpp"

namespace mps {

// Exponentially weighted norm: the field is multiplied in Fourier by
// e^{a w(xi)} with w either the l1 length |xi|_1 or the Euclidean length
// |xi|, then measured by a physical L^r norm or, when besov is set, by a
// dyadic block norm. a = 0 reduces to the inner norm exactly.
struct GevreyNorm {
    enum class Flavor { euclid, l1 };

    double a = 0.0;
    Flavor flavor = Flavor::euclid;
    double r = 2.0;
    std::optional<BesovSpec> besov;
};

// Throws on a < 0 and on weights that would overflow (a times the largest
// lattice frequency above the exponent guard). The partition-free overloads
// reject besov inner norms; pass a partition for those.
double gevrey_norm(const SpectralField& f, const GevreyNorm& gn);
double gevrey_norm(const VectorField& v, const GevreyNorm& gn);
double gevrey_norm(const DyadicPartition& part, const SpectralField& f, const GevreyNorm& gn);
double gevrey_norm(const DyadicPartition& part, const VectorField& v, const GevreyNorm& gn);

// Least-squares estimate of the exponential decay rate of the spectrum:
// collect max |f_hat| over each octave shell 2^j <= |xi| < 2^{j+1}, fit
// log(max) against the |xi| attaining it, and report minus the slope,
// clamped at zero (growth reads as "no decay", not a negative radius).
// The residual is the RMS misfit of the fit and is always reported.
struct RadiusFit {
    double radius_estimate = 0.0;
    int j_lo = 0;
    int j_hi = 0;
    int shells_used = 0;
    double residual = 0.0;
};

// Shells with no modes (or all-zero modes) are skipped; fewer than four
// populated shells is an error, as are all-equal maxima (a log-linear fit
// through a constant says nothing about decay).
RadiusFit radius_fit(const SpectralField& f, int j_lo, int j_hi);
RadiusFit radius_fit(const VectorField& v, int j_lo, int j_hi);

// The constant in the smoothing estimate for m derivatives:
// 1/(1 - 2^{-m}) + (8m)^m / (1 - e^{-1/8}).
double smoothing_constant(double m);

// Empirical check of the low-frequency smoothing estimate: for random f the
// block norm of Lambda^m f (levels j <= j0, ell^1 over levels) is bounded by
// c_m t^{-m/2} times the same-levels block norm of e^{sqrt(t) Lambda_1} f
// with ell^inf over levels. The high-frequency variant measures levels
// j > j0 and gains an extra factor e^{-sqrt(t) 2^{j0}/4}.
struct SmoothingReport {
    double m = 0.0;
    double c_m = 0.0;
    double worst_ratio = 0.0;  // max over trials and times of LHS / bound
    double worst_t = 0.0;
    int trials = 0;
    bool high_freq = false;
    bool ok = false;  // worst_ratio <= 1
};

SmoothingReport smoothing_constant_check(const Grid3& g, double m, const std::vector<double>& t_grid,
                                         int trials, double s, double p, int j0,
                                         std::uint64_t seed, bool high_freq = false);

// Empirical check that the Euclidean and l1 exponential weights are
// equivalent on annulus-supported fields: with c1 = 0.9/sqrt(3) and
// c2 = 1.1 the l1-weighted norms at c1*alpha and c2*alpha sandwich the
// Euclidean-weighted norm at alpha with constants C1 = C2 = 1 (the weights
// already compare pointwise). alpha_bars are scaled per block as
// alpha = alpha_bar * 2^{-j} so the measured ratios are level-independent.
struct EquivalenceReport {
    double c1 = 0.0;
    double c2 = 0.0;
    bool sandwich_ok = false;
    double min_lower_ratio = 1.0;  // min over samples of N_euclid / N_l1(c1 alpha)
    double max_upper_ratio = 1.0;  // max over samples of N_euclid / N_l1(c2 alpha)
    std::vector<int> blocks;
    std::vector<double> block_min_lower;
    std::vector<double> block_max_upper;
};

EquivalenceReport multiplier_equiv_check(const Grid3& g, const std::vector<double>& alpha_bars,
                                         int j_lo, int j_hi, int trials, double p,
                                         std::uint64_t seed);

// Samples the symbol e^{gamma (c|xi+eta| - c1|xi| - c2|eta|)} times the two
// annulus cutoffs (xi at level j_hi, eta at level j_lo) and measures its
// first derivatives by centered differences, reporting the worst
// |grad_xi| * |xi| and |grad_eta| * |eta| over the support. Requires
// j_lo <= j_hi - 2. Every sample must satisfy the exponent bound
// c|xi+eta| - c1|xi| - c2|eta| <= -|eta|; a violation is an error naming
// the offending pair (c2 was chosen too small).
struct BilinearReport {
    double gamma = 0.0;
    double c = 0.0;
    double c1 = 0.0;
    double c2 = 0.0;
    int j_lo = 0;
    int j_hi = 0;
    int samples = 0;
    double worst_xi_constant = 0.0;
    double worst_eta_constant = 0.0;
    double min_margin = 0.0;  // min over samples of -(exponent) - |eta|
};

BilinearReport bilinear_symbol_check(double gamma, double c, double c1, double c2, int j_lo,
                                     int j_hi, int sample_density, std::uint64_t seed);

}  // namespace mps
