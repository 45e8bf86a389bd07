#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "paradise/matrix.hpp"

namespace paradise {

/// Raised for malformed or inconsistent input data; the CLI maps it to
/// exit code 2.
class DataError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Multivariate time series: n observations (rows) of d variables (columns).
/// Immutable by convention once constructed; all pipeline stages copy or
/// view, never mutate.
struct TimeSeries {
    Matrix values;                  // n x d
    std::vector<std::string> names; // length d, unique

    std::size_t n() const { return values.rows(); }
    std::size_t d() const { return values.cols(); }
};

/// 0/1 label per observation; 1 marks an anomalous instant.
struct LabelVector {
    std::vector<int> labels;

    std::size_t size() const { return labels.size(); }
    std::size_t positives() const;
    double contamination() const;
};

/// Disjoint covering grouping of variable indices. Indices are 0-based in
/// code; serialized artifacts use variable names (see partition_to_json) and
/// user-facing docs count parts and variables from 1.
struct Partition {
    std::vector<std::vector<std::size_t>> parts;

    std::size_t size() const { return parts.size(); }

    /// Parts sorted internally, then ordered by smallest member. Canonical
    /// form makes partitions comparable across clustering label orders.
    Partition canonical() const;
};

/// Single part covering all d variables (the classic, unpartitioned view).
Partition single_part_partition(std::size_t d);

/// Build a partition from per-point cluster labels; label -1 means noise and
/// yields a singleton part. Result is canonical.
Partition partition_from_assignment(const std::vector<int>& assignment);

/// Per-part local scores plus fused global score and origin attribution.
struct ScoreBundle {
    std::vector<std::vector<double>> local;      // p raw score vectors, length n
    std::vector<std::vector<double>> normalized; // p min-max normalized vectors
    std::vector<double> global;                  // length n, in [0,1]
    std::vector<int> origin;                     // length n, 0-based part index

    std::size_t parts() const { return local.size(); }
    std::size_t n() const { return global.size(); }
};

/// One invariant violation found by validate(); row/col are 0-based and -1
/// when not applicable.
struct Violation {
    std::string message;
    long row = -1;
    long col = -1;
};

/// Diagnostic check of the TimeSeries invariants: finite entries, n >= 2,
/// d >= 1, unique names of matching length. Empty result means valid.
std::vector<Violation> validate(const TimeSeries& series);

/// True iff parts are non-empty, pairwise disjoint and cover {0..d-1}.
bool is_valid_partition(const Partition& partition, std::size_t d);

/// NaN handling at ingestion. Reject is the default; Interpolate fills
/// interior gaps linearly and edges with the nearest finite value.
enum class NanPolicy { Reject, Interpolate };

/// Applies the NaN policy column by column. Throws DataError when the policy
/// is Reject and a non-finite entry exists, or when a column has no finite
/// value at all.
void apply_nan_policy(TimeSeries& series, NanPolicy policy);

} // namespace paradise
