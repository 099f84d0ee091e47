#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>

namespace mps {

inline constexpr double pi = 3.14159265358979323846;

// Periodic box [0,L)^3 sampled on an n^3 collocation grid.
// Spectral storage uses FFT mode order per axis: 0, 1, ..., n/2-1, -n/2, ..., -1,
// flattened row-major over (i0, i1, i2). Integer mode k maps to the physical
// wavenumber xi = (2*pi/L) * k.
struct Grid3 {
    int n = 0;
    double L = 0.0;

    Grid3() = default;

    Grid3(int n_per_axis, double domain_length) : n(n_per_axis), L(domain_length) {
        if (n < 8) throw std::invalid_argument("Grid3: n_per_axis must be >= 8");
        if ((n & (n - 1)) != 0) throw std::invalid_argument("Grid3: n_per_axis must be a power of two");
        if (!(L > 0.0)) throw std::invalid_argument("Grid3: domain_length must be positive");
    }

    std::size_t size() const { return static_cast<std::size_t>(n) * n * n; }

    // signed integer mode for a storage index in [0, n)
    int mode(int idx) const { return idx < n / 2 ? idx : idx - n; }

    // storage index for a signed mode in [-n/2, n/2-1]
    int index_of(int k) const { return k >= 0 ? k : k + n; }

    double xi_step() const { return 2.0 * pi / L; }

    std::size_t flat(int i0, int i1, int i2) const {
        return (static_cast<std::size_t>(i0) * n + i1) * n + i2;
    }

    // largest |xi| on the lattice (corner mode (-n/2, -n/2, -n/2))
    double xi_max() const { return xi_step() * (n / 2) * std::sqrt(3.0); }

    // largest |xi|_1 on the lattice
    double xi_max_l1() const { return xi_step() * (n / 2) * 3.0; }

    // integer cutoff of the 2/3 dealiasing rule: modes with any |k_i| > this are dropped
    int dealias_kmax() const { return n / 3; }

    bool operator==(const Grid3& o) const { return n == o.n && L == o.L; }
    bool operator!=(const Grid3& o) const { return !(*this == o); }
};

}  // namespace mps
