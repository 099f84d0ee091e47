#pragma once

#include <vector>

#include "mps/dyadic.hpp"
#include "mps/field.hpp"

namespace mps {

// Frequency-side analysis of the linear part of the coupled system
//
//   d/dt u     = -chi_bar|xi|^2 u + 2 chi W
//   d/dt W     = -(mu|xi|^2 + 4 chi) W + 2 chi |xi|^2 u
//
// where W is (the Fourier coefficient of) the curl of the solenoidal part of
// the rotation field. Each Cartesian component of (u_hat, W_hat) evolves by
// exp(-t A(|xi|)) with the 2x2 matrix below; the gradient part of the
// rotation decouples and decays by a scalar factor.

// 2x2 coefficient matrix A at radius |xi|. Stored row-major: the generator of
// the decay semigroup, so both eigenvalues are nonnegative decay rates.
struct SymbolMatrix {
    double a00, a01, a10, a11;

    static SymbolMatrix at(double xi_norm, const Viscosities& visc);

    double trace() const { return a00 + a11; }
    double determinant() const { return a00 * a11 - a01 * a10; }
    // discriminant of the characteristic polynomial, (tr/2)^2 - det
    double discriminant() const;
};

// decay rates lambda_plus >= lambda_minus. For positive viscosities the pair
// is provably real (the discriminant is a quadratic in |xi|^2 with no
// positive root), but the complex branch is still reported faithfully:
// real_pair=false means the rates share real part (lambda_plus ==
// lambda_minus == tr/2) and carry +-imag_part as oscillation.
struct EigenPair {
    double lambda_plus = 0.0;
    double lambda_minus = 0.0;
    bool real_pair = true;
    double imag_part = 0.0;
};

EigenPair eigenvalues(double xi_norm, const Viscosities& visc);

// one sample of the dispersion curves plus the two asymptotic diagnostics:
// ratio_lowfreq  = lambda_minus / (nu |xi|^2)            -> 1 as |xi| -> 0
// ratio_highfreq = lambda_plus lambda_minus / (chi_bar mu |xi|^4) -> 1 as |xi| -> inf
struct SpectrumRow {
    double xi = 0.0;
    double lambda_plus = 0.0;
    double lambda_minus = 0.0;
    double ratio_lowfreq = 0.0;
    double ratio_highfreq = 0.0;
};

// xi_grid entries must be strictly positive (the ratios divide by powers of xi)
std::vector<SpectrumRow> spectrum_rows(const Viscosities& visc,
                                       const std::vector<double>& xi_grid);

// end-of-grid checks of the four limit laws:
// low frequency:  lambda_plus -> 4 chi,        lambda_minus ~ nu |xi|^2
// high frequency: lambda_+ lambda_- ~ chi_bar mu |xi|^4,
//                 lambda_+ + lambda_- ~ (chi_bar + mu) |xi|^2
// The *_ok flags ask for agreement within 2% at the grid ends, which needs
// the grid to reach far enough out; spans under 4 decades are rejected.
struct AsymptoticsReport {
    double low_plus_ratio = 0.0;
    double low_minus_ratio = 0.0;
    double high_prod_ratio = 0.0;
    double high_sum_ratio = 0.0;
    bool low_ok = false;
    bool high_ok = false;
    std::vector<SpectrumRow> rows;
};

AsymptoticsReport asymptotics_report(const Viscosities& visc,
                                     const std::vector<double>& xi_grid);

// entries of exp(-t A(|xi|)) evaluated with branch-stable formulas (explicit
// eigenvalue split, trig form, or a Taylor series near the double root), plus
// the scalar factor exp(-t((mu+kappa)|xi|^2 + 4 chi)) that multiplies the
// gradient part of the rotation. Negative t runs the flow backwards.
struct ModePropagator {
    double p00, p01, p10, p11;
    double q_factor;
};

ModePropagator mode_propagator(double t, double xi_norm, const Viscosities& visc);

// exact solution of the linear system at time s.time + t. Requires div u = 0
// (throws otherwise); preserves it exactly. The k=0 mode keeps u and damps
// omega by exp(-4 chi t).
State linear_propagate(const State& s, double t, const Viscosities& visc);

// R = curl(omega) + (1/2) laplacian(u), the combination whose evolution
// closes with constant coefficients:
//   d/dt R = -2 R + (3/2) laplacian R - (1/4) laplacian^2 u.
// Only meaningful for the normalized viscosity preset; throws otherwise.
VectorField effective_velocity(const State& s, const Viscosities& visc);

// Block-wise decay of the damped heat propagator exp(t(laplacian - 2)) at the
// normalized preset. For each t the ratio
//   || exp(t(laplacian-2)) block_j f ||_p  /  ( exp(-(c 4^j + 2) t) || block_j f ||_p )
// is formed with c = (3/4)^2, the square of the inner annulus radius. worst_*
// record the largest ratio over t_grid; callers assert a uniform bound.
struct KernelCheck {
    int j = 0;
    double p = 2.0;
    double worst_ratio = 0.0;
    double worst_t = 0.0;
};

KernelCheck damped_kernel_check(const DyadicPartition& part, const SpectralField& f,
                                int j, const std::vector<double>& t_grid, double p);

}  // namespace mps
