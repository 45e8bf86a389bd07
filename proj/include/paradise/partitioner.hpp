#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "paradise/correlation.hpp"
#include "paradise/types.hpp"

namespace paradise {

enum class PartitionBackend { KMeansSweep, Density };
enum class PartitionSelection { Silhouette, SupervisedRoc };

struct PartitionerConfig {
    PartitionBackend backend = PartitionBackend::KMeansSweep;
    std::size_t k_min = 2;
    std::size_t k_max = 20; // clamped to d at run time
    std::size_t min_cluster_size = 2;
    PartitionSelection selection = PartitionSelection::Silhouette;
    std::uint64_t seed = 0;
};

/// Mean silhouette over all points (Euclidean a/b formulation). Singleton
/// clusters score 0 by convention. Empty when fewer than 2 clusters.
std::optional<double> silhouette_score(const Matrix& points, const std::vector<int>& assignment);

/// One candidate partition per clustering configuration: every k in the
/// sweep range plus the density backend. Used by the benchmark's supervised
/// selection; every candidate is a valid partition (noise -> singletons).
struct PartitionCandidate {
    Partition partition;
    std::string source; // "kmeans k=3", "density"
};
std::vector<PartitionCandidate> partition_candidates(const CorrelationMatrix& matrix,
                                                     const PartitionerConfig& config);

/// Clusters the matrix rows into the estimated partition. Unsupervised
/// silhouette selection only; supervised-roc selection needs labels and
/// lives in the benchmark. d < 2 returns the single-part partition.
Partition partition_variables(const CorrelationMatrix& matrix, const PartitionerConfig& config);

} // namespace paradise
