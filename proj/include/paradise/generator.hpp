#pragma once

#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "paradise/types.hpp"

namespace paradise {

/// One sinusoidal term of a support variable. A NaN phase means "draw
/// uniformly from the generation seed". variable_frequency modulates the
/// frequency over time: alpha(x) = alpha * (1 + 0.5 * sin(alpha * x / 50)).
struct SupportTerm {
    double amplitude = 1.0;
    double frequency = 0.1; // radians per step
    double phase = std::numeric_limits<double>::quiet_NaN();
    bool variable_frequency = false;
};

struct SupportSpec {
    std::vector<SupportTerm> terms;
};

enum class TrackingMode { Linear, Exponential, Logarithmic };

/// A variable that follows its subset's support through a sign-driven
/// recurrence with step r:
///   linear       u_{m+1} = u_m + sgn(df) * r
///   exponential  u_{m+1} = u_m * (1+r)^sgn(df)        (u0 > 0)
///   logarithmic  u_{m+1} = u_m + sgn(df) * r/(1+m*r)
/// where df = f(m+1) - f(m) and sgn(0) = 0.
struct TrackingSpec {
    std::size_t support_index = 0; // which support of the subset it follows
    TrackingMode mode = TrackingMode::Linear;
    double step = 0.1;
    double u0 = std::numeric_limits<double>::quiet_NaN(); // NaN: 0, or 1 for exponential
};

/// One correlation-coherent subset: a support variable plus its trackers.
struct SubsetSpec {
    SupportSpec support;
    std::vector<TrackingSpec> trackers;
};

enum class AnomalyKind { Noise, Frequency, Correlation };

std::string anomaly_kind_name(AnomalyKind k);

/// Injection order: only the target column changes; labels are set to 1
/// over [start, end).
///   noise       add Gaussian noise of sigma = magnitude over the interval
///   frequency   regenerate the support segment with frequencies scaled by
///               magnitude, continuous at `start` via phase adjustment
///   correlation regenerate the tracking segment with the step sign flipped
///               (anti-tracking), continuing from the value at `start`
struct AnomalySpec {
    AnomalyKind kind = AnomalyKind::Noise;
    std::size_t target = 0; // column index
    std::size_t start = 0;
    std::size_t end = 0; // exclusive
    double magnitude = 1.0;
};

struct GeneratorSpec {
    std::size_t n = 1000;
    std::vector<SubsetSpec> subsets;
    double contamination = 0.0; // fraction of instants to label anomalous
    std::uint64_t seed = 0;
    double noise_sigma_scale = 1.0;   // noise sigma = scale * clean column stddev
    double frequency_factor = 3.0;    // frequency anomaly multiplier
};

struct SyntheticDataset {
    TimeSeries series;
    LabelVector labels;
    Partition ground_truth;
    std::vector<AnomalySpec> injected;
};

/// f(x) = sum_i beta_i * sin(alpha_i(x) * x + phase_i) at x = 0..n-1.
/// The seed resolves unset (NaN) phases.
std::vector<double> gen_support(const SupportSpec& spec, std::size_t n, std::uint64_t seed);

/// Tracking recurrence following the given support values.
std::vector<double> gen_tracking(const TrackingSpec& spec, const std::vector<double>& support);

/// Generation context: resolved clean columns plus the role of each column,
/// so anomalies can regenerate segments. Built by generate(); exposed for
/// targeted injection in tests and tools.
class SyntheticGenerator {
public:
    explicit SyntheticGenerator(const GeneratorSpec& spec);

    /// Clean dataset, no anomalies.
    SyntheticDataset build_clean() const;

    /// Injects into series/labels in place. Throws when the target is out of
    /// range or a correlation anomaly addresses a support variable.
    void inject_anomaly(TimeSeries& series, LabelVector& labels, const AnomalySpec& anomaly,
                        std::uint64_t seed) const;

    /// Full dataset: clean columns, planned anomalies at the requested
    /// contamination (within +-20% relative, intervals 0.5%..2% of n spread
    /// across subsets), deterministic for a given spec.
    SyntheticDataset generate() const;

    const GeneratorSpec& spec() const { return spec_; }
    bool is_support_column(std::size_t col) const;
    std::size_t subset_of_column(std::size_t col) const;

private:
    GeneratorSpec spec_;
    struct ColumnRole {
        std::size_t subset;
        bool is_support;
        std::size_t tracker_index; // valid when !is_support
    };
    std::vector<ColumnRole> roles_;
    std::vector<std::string> names_;
    std::vector<std::vector<double>> clean_columns_;
    std::vector<std::vector<double>> resolved_phases_; // per subset, per term

    std::vector<double> support_segment(std::size_t subset, double freq_factor, std::size_t start,
                                        std::size_t end, std::size_t n) const;
    std::vector<AnomalySpec> plan_anomalies() const;
};

SyntheticDataset generate(const GeneratorSpec& spec);

/// Knobs for randomized specs (benchmark grids).
struct RandomSpecParams {
    std::size_t n = 5000;
    std::size_t num_subsets = 3;
    std::size_t min_trackers = 1;
    std::size_t max_trackers = 3;
    double contamination = 0.02;
    double noise_sigma_scale = 1.0;
    double frequency_factor = 3.0;
};

/// A GeneratorSpec with randomized amplitudes, frequencies and tracker
/// modes; the first tracker of each subset is always linear.
GeneratorSpec make_random_spec(const RandomSpecParams& params, std::uint64_t seed);

} // namespace paradise
