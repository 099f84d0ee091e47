#pragma once

#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "mps/dyadic.hpp"
#include "mps/field.hpp"

namespace mps {

// Parameters of a homogeneous dyadic-block norm: ell^q over levels j of
// 2^{j s} times the L^p norm of the block. p and q live in [1, inf].
struct BesovSpec {
    double s = 0.0;
    double p = 2.0;
    double q = 2.0;
    std::optional<int> cutoff_j0;

    BesovSpec() = default;
    BesovSpec(double s_, double p_, double q_, std::optional<int> j0 = std::nullopt);
};

// Homogeneous norm; requires zero-mean data (the mean has no block to live
// in) and rejects anything else. A spec carrying cutoff_j0 must go through
// the low/high entry points below; the full norm rejects it.
double besov_norm(const DyadicPartition& part, const SpectralField& f, const BesovSpec& spec);
double besov_norm(const DyadicPartition& part, const VectorField& v, const BesovSpec& spec);

// Split variants: the low norm combines levels j <= cutoff_j0, the high norm
// levels j > cutoff_j0. Both require spec.cutoff_j0 to be set.
double besov_norm_low(const DyadicPartition& part, const SpectralField& f, const BesovSpec& spec);
double besov_norm_low(const DyadicPartition& part, const VectorField& v, const BesovSpec& spec);
double besov_norm_high(const DyadicPartition& part, const SpectralField& f, const BesovSpec& spec);
double besov_norm_high(const DyadicPartition& part, const VectorField& v, const BesovSpec& spec);

// Time-integrated block norms on a sampled trajectory: per level j the block
// L^p norm is raised to the time exponent rho and integrated by trapezoid
// over the snapshot times (max over times for rho = inf), then the levels are
// combined as in besov_norm. Needs at least two strictly increasing times.
double chemin_lerner_norm(const DyadicPartition& part, const std::vector<double>& times,
                          const std::vector<SpectralField>& fields, double rho, const BesovSpec& spec);
double chemin_lerner_norm(const DyadicPartition& part, const std::vector<double>& times,
                          const std::vector<VectorField>& fields, double rho, const BesovSpec& spec);

// The other integration order: the full block norm at each time, then the
// time L^rho. Dominated by chemin_lerner_norm when q <= rho and dominating it
// when q >= rho (Minkowski for the shared trapezoid weights).
double time_lebesgue_besov_norm(const DyadicPartition& part, const std::vector<double>& times,
                                const std::vector<SpectralField>& fields, double rho, const BesovSpec& spec);
double time_lebesgue_besov_norm(const DyadicPartition& part, const std::vector<double>& times,
                                const std::vector<VectorField>& fields, double rho, const BesovSpec& spec);

// Convexity of the block norms in the regularity index: the norm at
// theta*s1 + (1-theta)*s2 is bounded by the product of the s1 and s2 norms
// raised to theta and 1-theta, with constant 1 when p and q are shared.
struct InterpolationReport {
    double mid_norm = 0.0;
    double low_norm = 0.0;
    double high_norm = 0.0;
    double bound = 0.0;   // low^theta * high^(1-theta)
    double ratio = 0.0;   // mid / bound
    bool holds = false;
};
InterpolationReport interpolation_check(const DyadicPartition& part, const SpectralField& f, double s1,
                                        double s2, double theta, double p, double q = 2.0);

// per-level norm table for CSV export
struct BlockRow {
    int j;
    double scale;      // 2^j
    double block_lp;   // L^p norm of the block
    double weighted;   // 2^{j s} * block_lp
};
std::vector<BlockRow> block_table(const DyadicPartition& part, const SpectralField& f, const BesovSpec& spec);
std::vector<BlockRow> block_table(const DyadicPartition& part, const VectorField& v, const BesovSpec& spec);
void write_block_table_csv(std::ostream& out, const std::vector<BlockRow>& rows);

// Labeled scalar time series, one column per label, validated to share the
// strictly increasing time axis.
struct NormSeries {
    std::vector<double> times;
    std::map<std::string, std::vector<double>> values;

    void check() const;  // throws on unordered times, ragged or non-finite columns
};
void write_norm_series_csv(std::ostream& out, const NormSeries& series);

}  // namespace mps
