#pragma once

#include <utility>

#include "mps/field.hpp"

namespace mps {

// Fourier multipliers and first-order vector calculus, all exact per-mode.
struct Symbol {
    enum class Kind { laplacian, curl, grad_div, lambda_pow, heat, gevrey_l1, gevrey_l2 };
    Kind kind;
    double param = 0.0;

    static Symbol laplacian() { return {Kind::laplacian, 0.0}; }
    static Symbol curl() { return {Kind::curl, 0.0}; }
    static Symbol grad_div() { return {Kind::grad_div, 0.0}; }
    static Symbol lambda_pow(double s) { return {Kind::lambda_pow, s}; }
    static Symbol heat(double t) { return {Kind::heat, t}; }
    static Symbol gevrey_l1(double a) { return {Kind::gevrey_l1, a}; }
    static Symbol gevrey_l2(double a) { return {Kind::gevrey_l2, a}; }
};

// Exponential multipliers e^{a|xi|} overflow doubles long before |xi| does;
// requests beyond this product are rejected rather than silently saturated.
inline constexpr double gevrey_exponent_guard = 600.0;

SpectralField apply_symbol(const SpectralField& f, const Symbol& s);
VectorField apply_symbol(const VectorField& v, const Symbol& s);

// v_hat - xi (xi . v_hat)/|xi|^2; the xi=0 mode passes through unchanged
VectorField leray_project(const VectorField& v);

struct HelmholtzParts {
    VectorField p_part;  // divergence-free
    VectorField q_part;  // curl-free (the xi=0 mode is carried here)
};
HelmholtzParts helmholtz_split(const VectorField& w);

VectorField gradient(const SpectralField& f);
SpectralField divergence(const VectorField& v);
VectorField curl(const VectorField& v);

// L^r norm of the physical samples with unit-mass measure on the box, so that
// ||1||_r = 1 for every r. r = infinity gives the max norm. Vector fields use
// the pointwise Euclidean magnitude.
double lp_norm(const SpectralField& f, double r);
double lp_norm(const VectorField& v, double r);

// L^2 norms straight from the coefficients (Parseval), no FFT
double l2_norm(const SpectralField& f);
double l2_norm(const VectorField& v);

// sum_k a(k) conj(b(k)), the spectral inner product matching l2_norm
cplx l2_inner(const SpectralField& a, const SpectralField& b);

// 2/3-rule truncation: zero every mode with any |k_i| > n/3 (this includes
// the asymmetric Nyquist index -n/2)
void dealias_truncate(SpectralField& f);
void dealias_truncate(VectorField& v);
bool is_dealias_band_limited(const SpectralField& f, double rel_tol = 1e-13);

// linear combinations, used by the time steppers
void axpy(VectorField& y, double a, const VectorField& x);  // y += a*x
void scale(VectorField& y, double a);

}  // namespace mps
