#include "mps/besov.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>
#include <ostream>
#include <stdexcept>

#include "mps/ops.hpp"

namespace mps {

namespace {

const double inf = std::numeric_limits<double>::infinity();

bool is_exponent(double e) { return e >= 1.0; }  // admits inf

double block_lp(const SpectralField& f, double p) { return p == 2.0 ? l2_norm(f) : lp_norm(f, p); }
double block_lp(const VectorField& v, double p) { return p == 2.0 ? l2_norm(v) : lp_norm(v, p); }

template <class Field>
void require_zero_mean(const Field& f);

template <>
void require_zero_mean<SpectralField>(const SpectralField& f) {
    const double scale = f.max_abs();
    if (scale > 0.0 && std::abs(f.c[0]) > 1e-12 * scale)
        throw std::invalid_argument("homogeneous block norm undefined for data with nonzero mean");
}

template <>
void require_zero_mean<VectorField>(const VectorField& v) {
    for (int m = 0; m < 3; ++m) require_zero_mean(v[m]);
}

// ell^q combination of the weighted block norms
double combine_levels(const std::vector<double>& weighted, double q) {
    if (q == inf) {
        double m = 0.0;
        for (double w : weighted) m = std::max(m, w);
        return m;
    }
    double acc = 0.0;
    for (double w : weighted) acc += std::pow(w, q);
    return std::pow(acc, 1.0 / q);
}

double trapezoid(const std::vector<double>& t, const std::vector<double>& y) {
    double acc = 0.0;
    for (std::size_t i = 0; i + 1 < t.size(); ++i) acc += 0.5 * (t[i + 1] - t[i]) * (y[i] + y[i + 1]);
    return acc;
}

// time L^rho of sampled values, trapezoid quadrature
double time_norm(const std::vector<double>& t, std::vector<double> y, double rho) {
    if (rho == inf) {
        double m = 0.0;
        for (double v : y) m = std::max(m, v);
        return m;
    }
    for (double& v : y) v = std::pow(v, rho);
    return std::pow(trapezoid(t, y), 1.0 / rho);
}

template <class Field>
double besov_levels_impl(const DyadicPartition& part, const Field& f, const BesovSpec& spec,
                         int j_lo, int j_hi) {
    require_zero_mean(f);
    std::vector<double> weighted;
    weighted.reserve(part.count());
    for (int j = std::max(j_lo, part.j_min); j <= std::min(j_hi, part.j_max); ++j)
        weighted.push_back(std::pow(2.0, spec.s * j) * block_lp(dyadic_block(part, f, j), spec.p));
    return combine_levels(weighted, spec.q);
}

template <class Field>
double besov_norm_impl(const DyadicPartition& part, const Field& f, const BesovSpec& spec) {
    if (spec.cutoff_j0)
        throw std::invalid_argument("besov_norm: spec carries a cutoff; use besov_norm_low/high");
    return besov_levels_impl(part, f, spec, part.j_min, part.j_max);
}

template <class Field>
double besov_low_impl(const DyadicPartition& part, const Field& f, const BesovSpec& spec) {
    if (!spec.cutoff_j0) throw std::invalid_argument("besov_norm_low: spec has no cutoff");
    return besov_levels_impl(part, f, spec, part.j_min, *spec.cutoff_j0);
}

template <class Field>
double besov_high_impl(const DyadicPartition& part, const Field& f, const BesovSpec& spec) {
    if (!spec.cutoff_j0) throw std::invalid_argument("besov_norm_high: spec has no cutoff");
    return besov_levels_impl(part, f, spec, *spec.cutoff_j0 + 1, part.j_max);
}

template <class Field>
void check_series(const DyadicPartition& part, const std::vector<double>& times,
                  const std::vector<Field>& fields, double rho) {
    if (times.size() < 2) throw std::invalid_argument("time series needs at least two snapshots");
    if (times.size() != fields.size()) throw std::invalid_argument("time and field counts differ");
    for (std::size_t i = 0; i + 1 < times.size(); ++i)
        if (!(times[i] < times[i + 1])) throw std::invalid_argument("snapshot times must be strictly increasing");
    if (!is_exponent(rho)) throw std::invalid_argument("time exponent must be >= 1");
    for (const Field& f : fields) require_zero_mean(f);
    (void)part;
}

template <class Field>
double chemin_lerner_impl(const DyadicPartition& part, const std::vector<double>& times,
                          const std::vector<Field>& fields, double rho, const BesovSpec& spec) {
    check_series(part, times, fields, rho);
    std::vector<double> weighted;
    weighted.reserve(part.count());
    std::vector<double> samples(times.size());
    for (int j = part.j_min; j <= part.j_max; ++j) {
        for (std::size_t i = 0; i < fields.size(); ++i)
            samples[i] = block_lp(dyadic_block(part, fields[i], j), spec.p);
        weighted.push_back(std::pow(2.0, spec.s * j) * time_norm(times, samples, rho));
    }
    return combine_levels(weighted, spec.q);
}

template <class Field>
double time_lebesgue_impl(const DyadicPartition& part, const std::vector<double>& times,
                          const std::vector<Field>& fields, double rho, const BesovSpec& spec) {
    check_series(part, times, fields, rho);
    std::vector<double> samples(times.size());
    for (std::size_t i = 0; i < fields.size(); ++i) samples[i] = besov_norm(part, fields[i], spec);
    return time_norm(times, samples, rho);
}

template <class Field>
std::vector<BlockRow> block_table_impl(const DyadicPartition& part, const Field& f, const BesovSpec& spec) {
    std::vector<BlockRow> rows;
    rows.reserve(part.count());
    for (int j = part.j_min; j <= part.j_max; ++j) {
        const double lp = block_lp(dyadic_block(part, f, j), spec.p);
        rows.push_back({j, std::ldexp(1.0, j), lp, std::pow(2.0, spec.s * j) * lp});
    }
    return rows;
}

}  // namespace

BesovSpec::BesovSpec(double s_, double p_, double q_, std::optional<int> j0)
    : s(s_), p(p_), q(q_), cutoff_j0(j0) {
    if (!std::isfinite(s)) throw std::invalid_argument("regularity index must be finite");
    if (!is_exponent(p)) throw std::invalid_argument("Lebesgue exponent must be >= 1");
    if (!is_exponent(q)) throw std::invalid_argument("summation exponent must be >= 1");
}

double besov_norm(const DyadicPartition& part, const SpectralField& f, const BesovSpec& spec) {
    return besov_norm_impl(part, f, spec);
}
double besov_norm(const DyadicPartition& part, const VectorField& v, const BesovSpec& spec) {
    return besov_norm_impl(part, v, spec);
}

double besov_norm_low(const DyadicPartition& part, const SpectralField& f, const BesovSpec& spec) {
    return besov_low_impl(part, f, spec);
}
double besov_norm_low(const DyadicPartition& part, const VectorField& v, const BesovSpec& spec) {
    return besov_low_impl(part, v, spec);
}
double besov_norm_high(const DyadicPartition& part, const SpectralField& f, const BesovSpec& spec) {
    return besov_high_impl(part, f, spec);
}
double besov_norm_high(const DyadicPartition& part, const VectorField& v, const BesovSpec& spec) {
    return besov_high_impl(part, v, spec);
}

double chemin_lerner_norm(const DyadicPartition& part, const std::vector<double>& times,
                          const std::vector<SpectralField>& fields, double rho, const BesovSpec& spec) {
    return chemin_lerner_impl(part, times, fields, rho, spec);
}
double chemin_lerner_norm(const DyadicPartition& part, const std::vector<double>& times,
                          const std::vector<VectorField>& fields, double rho, const BesovSpec& spec) {
    return chemin_lerner_impl(part, times, fields, rho, spec);
}

double time_lebesgue_besov_norm(const DyadicPartition& part, const std::vector<double>& times,
                                const std::vector<SpectralField>& fields, double rho, const BesovSpec& spec) {
    return time_lebesgue_impl(part, times, fields, rho, spec);
}
double time_lebesgue_besov_norm(const DyadicPartition& part, const std::vector<double>& times,
                                const std::vector<VectorField>& fields, double rho, const BesovSpec& spec) {
    return time_lebesgue_impl(part, times, fields, rho, spec);
}

InterpolationReport interpolation_check(const DyadicPartition& part, const SpectralField& f, double s1,
                                        double s2, double theta, double p, double q) {
    if (!(theta > 0.0 && theta < 1.0)) throw std::invalid_argument("theta must lie in (0,1)");
    if (s1 == s2) throw std::invalid_argument("regularity endpoints must differ");
    InterpolationReport rep;
    rep.low_norm = besov_norm(part, f, BesovSpec(s1, p, q));
    rep.high_norm = besov_norm(part, f, BesovSpec(s2, p, q));
    rep.mid_norm = besov_norm(part, f, BesovSpec(theta * s1 + (1.0 - theta) * s2, p, q));
    rep.bound = std::pow(rep.low_norm, theta) * std::pow(rep.high_norm, 1.0 - theta);
    rep.ratio = rep.bound > 0.0 ? rep.mid_norm / rep.bound : (rep.mid_norm > 0.0 ? inf : 0.0);
    rep.holds = rep.mid_norm <= rep.bound * (1.0 + 1e-12);
    return rep;
}

std::vector<BlockRow> block_table(const DyadicPartition& part, const SpectralField& f, const BesovSpec& spec) {
    return block_table_impl(part, f, spec);
}
std::vector<BlockRow> block_table(const DyadicPartition& part, const VectorField& v, const BesovSpec& spec) {
    return block_table_impl(part, v, spec);
}

void write_block_table_csv(std::ostream& out, const std::vector<BlockRow>& rows) {
    out << "j,scale,block_lp,weighted\n";
    out << std::setprecision(16);
    for (const BlockRow& r : rows)
        out << r.j << ',' << r.scale << ',' << r.block_lp << ',' << r.weighted << '\n';
}

void NormSeries::check() const {
    for (std::size_t i = 0; i + 1 < times.size(); ++i)
        if (!(times[i] < times[i + 1])) throw std::invalid_argument("norm series times must be strictly increasing");
    for (const auto& [label, column] : values) {
        if (column.size() != times.size())
            throw std::invalid_argument("norm series column '" + label + "' length differs from time axis");
        for (double v : column)
            if (!std::isfinite(v)) throw std::invalid_argument("norm series column '" + label + "' has a non-finite value");
    }
}

void write_norm_series_csv(std::ostream& out, const NormSeries& series) {
    series.check();
    out << "time";
    for (const auto& [label, column] : series.values) out << ',' << label;
    out << '\n' << std::setprecision(16);
    for (std::size_t i = 0; i < series.times.size(); ++i) {
        out << series.times[i];
        for (const auto& [label, column] : series.values) out << ',' << column[i];
        out << '\n';
    }
}

}  // namespace mps
