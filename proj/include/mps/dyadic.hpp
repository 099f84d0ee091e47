#pragma once

#include "mps/field.hpp"

namespace mps {

// Smooth radial cutoff: exactly 1 for r <= 3/4, exactly 0 for r >= 4/3,
// monotone in between. Built from the classic exp(-1/x) mollifier
//   h(x) = exp(-1/x) for x > 0, else 0
//   s(x) = h(x) / (h(x) + h(1-x))
//   lowpass_profile(r) = s((4/3 - r) * 12/7)
double lowpass_profile(double r);

// Annulus bump lowpass_profile(rho/2) - lowpass_profile(rho), supported on
// 3/4 < rho < 8/3, valued in [0,1]. The dyadic family shell(2^-j rho) sums to
// 1 for every rho > 0.
double shell_profile(double rho);

// Range of dyadic levels j for which the annulus 3/4*2^j < |xi| < 8/3*2^j
// contains at least one lattice mode. Blocks outside the range are errors,
// not silently zero, so truncation effects surface loudly.
struct DyadicPartition {
    Grid3 grid;
    int j_min = 0;
    int j_max = -1;

    explicit DyadicPartition(const Grid3& g);

    int count() const { return j_max - j_min + 1; }
    bool contains(int j) const { return j >= j_min && j <= j_max; }
};

// multiplier shell_profile(2^-j |xi|); throws if j is outside the partition
SpectralField dyadic_block(const DyadicPartition& part, const SpectralField& f, int j);
VectorField dyadic_block(const DyadicPartition& part, const VectorField& v, int j);

// multiplier lowpass_profile(2^-j |xi|): the sum of blocks j' <= j-1 plus the
// mean mode
SpectralField low_pass(const DyadicPartition& part, const SpectralField& f, int j);
VectorField low_pass(const DyadicPartition& part, const VectorField& v, int j);

// low = blocks <= j0 plus the mean (multiplier lowpass_profile(2^-(j0+1)|xi|)),
// high = f - low. Any j0 is accepted: j0 >= j_max returns (f, 0) and
// j0 < j_min returns (mean, f - mean).
struct SplitParts {
    SpectralField low;
    SpectralField high;
};
SplitParts frequency_split(const DyadicPartition& part, const SpectralField& f, int j0);

struct VectorSplitParts {
    VectorField low;
    VectorField high;
};
VectorSplitParts frequency_split(const DyadicPartition& part, const VectorField& v, int j0);

// Paraproduct split of the pointwise product: a*b = t_ab + r_ab + t_ba with
//   t_ab = sum_j low_pass(a, j-1) * block_j(b)   (a strictly below b)
//   r_ab = sum_{|j-j'|<=1} block_j(a) * block_j'(b)
//   t_ba symmetric.
// Inputs must be zero-mean and 2/3-rule band-limited so every pairwise
// product is alias-free on the collocation grid; the returned parts are
// truncated to the same band. Their sum reproduces the band-limited product
// to roundoff.
struct BonyParts {
    SpectralField t_ab;
    SpectralField r_ab;
    SpectralField t_ba;
};
BonyParts bony_decompose(const DyadicPartition& part, const SpectralField& a, const SpectralField& b);

}  // namespace mps
