#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "paradise/types.hpp"

namespace paradise {

/// Which of the five dependence coefficients won a cell of the combined
/// matrix. Diagonal cells are tagged Self; cells short-circuited by a
/// zero-variance column are tagged None.
enum class Coefficient : std::uint8_t { Pearson, Spearman, Kendall, DistanceCorrelation, Xi, Self, None };

std::string coefficient_name(Coefficient c);

/// Combined absolute-dependence matrix: values[j1][j2] is the max of the
/// absolute values of the five coefficients on columns (j1, j2), then
/// symmetrized by cellwise max with the transpose. Diagonal is 1.
struct CorrelationMatrix {
    Matrix values;                               // d x d, entries in [0,1]
    std::vector<std::vector<Coefficient>> method_argmax; // parallel d x d

    std::size_t d() const { return values.rows(); }
};

struct CorrelationConfig {
    /// Distance correlation and xi run on an evenly strided subsample of at
    /// most this many points; the rank coefficients use the full series.
    std::size_t heavy_subsample_cap = 2000;
    std::uint64_t seed = 0; // xi tie-breaking
    int threads = 1;
};

/// Sample Pearson correlation; 0 when either variance is 0.
double pearson(std::span<const double> x, std::span<const double> y);

/// Fractional average ranks (ties get the mean of their rank range).
std::vector<double> average_ranks(std::span<const double> x);

/// Pearson of average ranks.
double spearman(std::span<const double> x, std::span<const double> y);

/// Kendall tau-b via merge-sort inversion counting, O(n log n).
/// (C - D) / sqrt((n0 - n1)(n0 - n2)); 0 when a denominator factor is 0.
double kendall(std::span<const double> x, std::span<const double> y);

/// Sample distance correlation in [0,1]; 0 when either distance variance
/// is 0. O(n^2) time, O(n) memory.
double distance_correlation(std::span<const double> x, std::span<const double> y);

/// Chatterjee's xi. Asymmetric; x-ties are broken uniformly at random from
/// the given seed. Returns 0 when y is constant (zero denominator).
double xi_coefficient(std::span<const double> x, std::span<const double> y, std::uint64_t rng_seed);

/// The combined matrix that feeds clustering.
CorrelationMatrix combined_matrix(const TimeSeries& series, const CorrelationConfig& config = {});

} // namespace paradise
