#pragma once

#include <vector>

#include "mps/field.hpp"

namespace mps {

// Inverse transform: spectral coefficients -> physical samples on the
// collocation grid, f(x_j) = sum_k c(k) exp(i xi_k . x_j). No scaling.
std::vector<cplx> to_physical(const SpectralField& f);

// Forward transform: physical samples -> spectral coefficients, dividing by
// n^3 so that to_spectral(to_physical(f)) == f. With enforce_reality the
// result is Hermitian-symmetrized (input understood as real samples).
SpectralField to_spectral(const Grid3& grid, const std::vector<cplx>& phys, bool enforce_reality = true);

// physical samples of a real field (imaginary parts discarded after checking
// they are roundoff-small relative to the field)
std::vector<double> to_physical_real(const SpectralField& f);

}  // namespace mps
