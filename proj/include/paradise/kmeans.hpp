#pragma once

#include <cstdint>
#include <vector>

#include "paradise/matrix.hpp"

namespace paradise {

struct KMeansResult {
    std::vector<int> assignment; // one cluster id per point, in [0, k)
    Matrix centroids;            // k x dims
    double inertia = 0.0;        // sum of squared distances to assigned centroid
    int iterations = 0;
};

/// Lloyd's algorithm with k-means++ seeding. At most 300 iterations; stops
/// when the largest centroid shift drops below 1e-6. Empty clusters are
/// re-seeded from the point farthest from its assigned centroid.
KMeansResult kmeans_fit(const Matrix& points, std::size_t k, std::uint64_t seed);

/// Assignment-only view of kmeans_fit.
std::vector<int> kmeans_cluster(const Matrix& points, std::size_t k, std::uint64_t seed);

/// Euclidean distance from each row to the nearest centroid.
std::vector<double> nearest_centroid_distance(const Matrix& points, const Matrix& centroids);

} // namespace paradise
