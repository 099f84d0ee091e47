#pragma once

#include <string>

#include "mps/field.hpp"

namespace mps {

// Binary state file, format "MPS1" version 1:
//   bytes 0..3   magic "MPS1"
//   u32          version = 1
//   u32          n_per_axis
//   f64          domain_length
//   f64          time
//   4 x f64      nu, chi, mu, kappa
//   6 x n^3      complex coefficients as little-endian (re, im) f64 pairs,
//                components u0, u1, u2, w0, w1, w2, each row-major in FFT
//                mode order
struct Snapshot {
    State state;
    Viscosities visc;
};

void save_snapshot(const State& state, const Viscosities& visc, const std::string& path);
Snapshot load_snapshot(const std::string& path);

}  // namespace mps
