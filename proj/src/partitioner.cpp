#include "paradise/partitioner.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>

#include "paradise/hdbscan.hpp"
#include "paradise/kmeans.hpp"
#include "paradise/rng.hpp"

namespace paradise {

std::optional<double> silhouette_score(const Matrix& points, const std::vector<int>& assignment) {
    const std::size_t n = points.rows();
    if (assignment.size() != n) throw std::invalid_argument("silhouette_score: size mismatch");
    int num_clusters = 0;
    for (int a : assignment) {
        if (a < 0) throw std::invalid_argument("silhouette_score: negative cluster id");
        num_clusters = std::max(num_clusters, a + 1);
    }
    std::vector<std::size_t> counts(static_cast<std::size_t>(num_clusters), 0);
    for (int a : assignment) counts[static_cast<std::size_t>(a)]++;
    std::size_t non_empty = 0;
    for (std::size_t c : counts) non_empty += (c > 0);
    if (non_empty < 2) return std::nullopt;

    auto dist = [&](std::size_t a, std::size_t b) {
        double acc = 0.0;
        for (std::size_t j = 0; j < points.cols(); ++j) {
            const double diff = points(a, j) - points(b, j);
            acc += diff * diff;
        }
        return std::sqrt(acc);
    };

    double total = 0.0;
    std::vector<double> mean_to_cluster(static_cast<std::size_t>(num_clusters));
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t own = static_cast<std::size_t>(assignment[i]);
        if (counts[own] == 1) continue; // singleton convention: s_i = 0
        std::fill(mean_to_cluster.begin(), mean_to_cluster.end(), 0.0);
        for (std::size_t j = 0; j < n; ++j) {
            if (j == i) continue;
            mean_to_cluster[static_cast<std::size_t>(assignment[j])] += dist(i, j);
        }
        const double a = mean_to_cluster[own] / static_cast<double>(counts[own] - 1);
        double b = std::numeric_limits<double>::infinity();
        for (std::size_t c = 0; c < counts.size(); ++c) {
            if (c == own || counts[c] == 0) continue;
            b = std::min(b, mean_to_cluster[c] / static_cast<double>(counts[c]));
        }
        const double denom = std::max(a, b);
        total += denom > 0.0 ? (b - a) / denom : 0.0;
    }
    return total / static_cast<double>(n);
}

std::vector<PartitionCandidate> partition_candidates(const CorrelationMatrix& matrix,
                                                     const PartitionerConfig& config) {
    const std::size_t d = matrix.d();
    std::vector<PartitionCandidate> out;
    if (d < 2) {
        out.push_back({single_part_partition(d), "trivial"});
        return out;
    }
    const std::size_t k_lo = std::clamp<std::size_t>(config.k_min, 1, d);
    const std::size_t k_hi = std::clamp<std::size_t>(config.k_max, k_lo, d);
    for (std::size_t k = k_lo; k <= k_hi; ++k) {
        const auto assignment = kmeans_cluster(matrix.values, k, derive_seed(config.seed, "kmeans", k));
        out.push_back({partition_from_assignment(assignment), "kmeans k=" + std::to_string(k)});
    }
    const auto density = density_cluster(matrix.values, config.min_cluster_size,
                                         derive_seed(config.seed, "density"));
    out.push_back({partition_from_assignment(density), "density"});
    return out;
}

Partition partition_variables(const CorrelationMatrix& matrix, const PartitionerConfig& config) {
    const std::size_t d = matrix.d();
    if (config.selection == PartitionSelection::SupervisedRoc)
        throw std::invalid_argument(
            "supervised-roc selection needs labels and is available in benchmark mode only");
    if (d < 2) {
        std::fprintf(stderr, "partition: d=%zu, returning the single-part partition\n", d);
        return single_part_partition(d);
    }

    if (config.backend == PartitionBackend::Density) {
        const auto assignment = density_cluster(matrix.values, config.min_cluster_size,
                                                derive_seed(config.seed, "density"));
        return partition_from_assignment(assignment);
    }

    const std::size_t k_lo = std::clamp<std::size_t>(config.k_min, 1, d);
    const std::size_t k_hi = std::clamp<std::size_t>(config.k_max, k_lo, d);
    Partition best;
    double best_score = -std::numeric_limits<double>::infinity();
    for (std::size_t k = k_lo; k <= k_hi; ++k) {
        const auto assignment = kmeans_cluster(matrix.values, k, derive_seed(config.seed, "kmeans", k));
        const auto sil = silhouette_score(matrix.values, assignment);
        // k = 1 (or a degenerate sweep) has no silhouette; keep it only as
        // the fallback when nothing else scores.
        const double score = sil.value_or(-std::numeric_limits<double>::infinity());
        if (best.parts.empty() || score > best_score) {
            best_score = score;
            best = partition_from_assignment(assignment);
        }
    }
    return best;
}

} // namespace paradise
