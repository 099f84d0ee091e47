#include "mps/dyadic.hpp"

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "mps/ops.hpp"
#include "mps/transform.hpp"

namespace mps {

namespace {

double mollifier(double x) { return x > 0.0 ? std::exp(-1.0 / x) : 0.0; }

// smooth step: 0 for x <= 0, 1 for x >= 1
double smooth_step(double x) {
    const double a = mollifier(x);
    if (a == 0.0) return 0.0;
    const double b = mollifier(1.0 - x);
    if (b == 0.0) return 1.0;
    return a / (a + b);
}

template <class Fn>
SpectralField apply_radial(const SpectralField& f, Fn&& fn) {
    SpectralField out(f.grid);
    out.reality = f.reality;
    const Grid3& g = f.grid;
    const double step = g.xi_step();
    std::size_t idx = 0;
    for (int i0 = 0; i0 < g.n; ++i0) {
        const double k0 = g.mode(i0);
        for (int i1 = 0; i1 < g.n; ++i1) {
            const double k1 = g.mode(i1);
            for (int i2 = 0; i2 < g.n; ++i2, ++idx) {
                const double k2 = g.mode(i2);
                const double rho = step * std::sqrt(k0 * k0 + k1 * k1 + k2 * k2);
                out.c[idx] = f.c[idx] * fn(rho);
            }
        }
    }
    return out;
}

void require_level(const DyadicPartition& part, int j) {
    if (!part.contains(j))
        throw std::out_of_range("dyadic level " + std::to_string(j) + " outside resolved range [" +
                                std::to_string(part.j_min) + ", " + std::to_string(part.j_max) + "]");
}

void require_same_grid(const DyadicPartition& part, const Grid3& g) {
    if (part.grid != g) throw std::invalid_argument("dyadic partition built for a different grid");
}

}  // namespace

double lowpass_profile(double r) { return smooth_step((4.0 / 3.0 - r) * (12.0 / 7.0)); }

double shell_profile(double rho) { return lowpass_profile(0.5 * rho) - lowpass_profile(rho); }

DyadicPartition::DyadicPartition(const Grid3& g) : grid(g) {
    // collect the distinct squared mode radii, then the levels they activate
    const int half = g.n / 2;
    std::vector<char> present(static_cast<std::size_t>(3) * half * half + 1, 0);
    for (int i0 = 0; i0 < g.n; ++i0) {
        const int k0 = g.mode(i0);
        for (int i1 = 0; i1 < g.n; ++i1) {
            const int k1 = g.mode(i1);
            for (int i2 = 0; i2 < g.n; ++i2) {
                const int k2 = g.mode(i2);
                present[static_cast<std::size_t>(k0 * k0 + k1 * k1 + k2 * k2)] = 1;
            }
        }
    }
    const double step = g.xi_step();
    bool any = false;
    for (std::size_t r2 = 1; r2 < present.size(); ++r2) {
        if (!present[r2]) continue;
        const double rho = step * std::sqrt(double(r2));
        // levels j with 3/4 < 2^-j rho < 8/3; at most three per radius
        const int first = int(std::floor(std::log2(rho * 3.0 / 8.0)));
        for (int j = first; j <= first + 4; ++j) {
            const double scaled = std::ldexp(rho, -j);
            if (scaled > 0.75 && scaled < 8.0 / 3.0) {
                if (!any || j < j_min) j_min = j;
                if (!any || j > j_max) j_max = j;
                any = true;
            }
        }
    }
    if (!any) throw std::logic_error("no dyadic level is active on this grid");
}

SpectralField dyadic_block(const DyadicPartition& part, const SpectralField& f, int j) {
    require_same_grid(part, f.grid);
    require_level(part, j);
    return apply_radial(f, [j](double rho) { return shell_profile(std::ldexp(rho, -j)); });
}

VectorField dyadic_block(const DyadicPartition& part, const VectorField& v, int j) {
    VectorField out(v.grid());
    for (int m = 0; m < 3; ++m) out[m] = dyadic_block(part, v[m], j);
    return out;
}

SpectralField low_pass(const DyadicPartition& part, const SpectralField& f, int j) {
    require_same_grid(part, f.grid);
    return apply_radial(f, [j](double rho) { return lowpass_profile(std::ldexp(rho, -j)); });
}

VectorField low_pass(const DyadicPartition& part, const VectorField& v, int j) {
    VectorField out(v.grid());
    for (int m = 0; m < 3; ++m) out[m] = low_pass(part, v[m], j);
    return out;
}

SplitParts frequency_split(const DyadicPartition& part, const SpectralField& f, int j0) {
    SplitParts parts{low_pass(part, f, j0 + 1), SpectralField(f.grid)};
    parts.high.reality = f.reality;
    for (std::size_t i = 0; i < f.c.size(); ++i) parts.high.c[i] = f.c[i] - parts.low.c[i];
    return parts;
}

VectorSplitParts frequency_split(const DyadicPartition& part, const VectorField& v, int j0) {
    VectorSplitParts parts{VectorField(v.grid()), VectorField(v.grid())};
    for (int m = 0; m < 3; ++m) {
        SplitParts s = frequency_split(part, v[m], j0);
        parts.low[m] = std::move(s.low);
        parts.high[m] = std::move(s.high);
    }
    return parts;
}

BonyParts bony_decompose(const DyadicPartition& part, const SpectralField& a, const SpectralField& b) {
    require_same_grid(part, a.grid);
    require_same_grid(part, b.grid);
    const double scale_a = a.max_abs(), scale_b = b.max_abs();
    if (std::abs(a.c[0]) > 1e-12 * scale_a || std::abs(b.c[0]) > 1e-12 * scale_b)
        throw std::invalid_argument("bony_decompose: inputs must have zero mean");
    if (!is_dealias_band_limited(a) || !is_dealias_band_limited(b))
        throw std::invalid_argument(
            "bony_decompose: inputs must be band-limited to the 2/3 rule so products are alias-free");

    const Grid3& g = a.grid;
    const std::size_t sz = g.size();

    // One pass over levels, all products accumulated in physical space:
    // running sums lag two levels behind the current block, the remainder
    // uses a one-level window.
    std::vector<cplx> sum_a(sz, cplx(0.0)), sum_b(sz, cplx(0.0));
    std::vector<cplx> acc_tab(sz, cplx(0.0)), acc_tba(sz, cplx(0.0)), acc_r(sz, cplx(0.0));
    std::vector<cplx> prev_a, prev_b, lag2_a, lag2_b;

    for (int j = part.j_min; j <= part.j_max; ++j) {
        std::vector<cplx> cur_a = to_physical(dyadic_block(part, a, j));
        std::vector<cplx> cur_b = to_physical(dyadic_block(part, b, j));
        if (!lag2_a.empty()) {
            for (std::size_t i = 0; i < sz; ++i) {
                sum_a[i] += lag2_a[i];
                sum_b[i] += lag2_b[i];
            }
        }
        for (std::size_t i = 0; i < sz; ++i) {
            acc_tab[i] += sum_a[i] * cur_b[i];
            acc_tba[i] += sum_b[i] * cur_a[i];
            acc_r[i] += cur_a[i] * cur_b[i];
        }
        if (!prev_a.empty()) {
            for (std::size_t i = 0; i < sz; ++i)
                acc_r[i] += cur_a[i] * prev_b[i] + prev_a[i] * cur_b[i];
        }
        lag2_a = std::move(prev_a);
        lag2_b = std::move(prev_b);
        prev_a = std::move(cur_a);
        prev_b = std::move(cur_b);
    }

    BonyParts parts{to_spectral(g, acc_tab, a.reality && b.reality),
                    to_spectral(g, acc_r, a.reality && b.reality),
                    to_spectral(g, acc_tba, a.reality && b.reality)};
    dealias_truncate(parts.t_ab);
    dealias_truncate(parts.r_ab);
    dealias_truncate(parts.t_ba);
    return parts;
}

}  // namespace mps
