#pragma once

#include <cstdint>
#include <random>

#include "mps/field.hpp"

namespace mps {

using rng_t = std::mt19937_64;

inline rng_t make_rng(std::uint64_t seed) { return rng_t(seed); }

// Gaussian coefficients on every mode with |k| <= band_kmax (all resolved
// modes if band_kmax < 0), Hermitian-symmetrized and zero-mean, normalized to
// unit L^2 and scaled by amplitude. Nyquist planes stay empty so that odd
// symbols applied downstream keep the field real-representable.
SpectralField random_real_field(const Grid3& g, rng_t& rng, double amplitude = 1.0, int band_kmax = -1);

VectorField random_vector_field(const Grid3& g, rng_t& rng, double amplitude = 1.0, int band_kmax = -1);

// Leray projection of random_vector_field, renormalized to `amplitude` in L^2
VectorField random_solenoidal_field(const Grid3& g, rng_t& rng, double amplitude = 1.0, int band_kmax = -1);

}  // namespace mps
