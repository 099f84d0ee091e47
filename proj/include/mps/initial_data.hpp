#pragma once

#include <cstdint>

#include "mps/field.hpp"

namespace mps {

// Recipes for the initial states the experiments run on. Every recipe
// produces zero-mean fields with divergence-free velocity, scaled so that
// the L2 norm of u equals `amplitude`.
struct InitialData {
    enum class Kind { kato_oscillating, taylor_green, random_slope };

    Kind kind = Kind::taylor_green;
    double amplitude = 1.0;

    // kato_oscillating: u = sin(x3/eps) (-d2 Phi, d1 Phi, 0) with a smooth
    // periodic bump Phi(x1, x2); eps is snapped so that 1/eps is a multiple
    // of 2 pi / L and the data stays periodic. seed shifts the bump center.
    double epsilon = 0.125;
    std::uint64_t seed = 1;

    // random_slope: solenoidal u with |u_hat| proportional to |xi|^(sigma - 3/2)
    // and omega with the extra factor |xi|^-1, over 0 < |k| <= band, so the
    // slope-sigma spectral envelope (and the matching one for Lambda omega)
    // is met exactly. Random phases by default; coherent_phases freezes all
    // phases to a fixed direction pair, concentrating the field at the origin
    // (needed to see Lebesgue-exponent dependence in decay fits).
    double sigma = 1.5;
    int band = 8;
    bool coherent_phases = false;

    // relative size of omega against u (kato and taylor_green set omega = 0)
    double omega_ratio = 1.0;
};

State make_initial_state(const Grid3& g, const InitialData& data);

}  // namespace mps
