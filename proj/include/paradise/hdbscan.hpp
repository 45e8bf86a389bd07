#pragma once

#include <cstdint>
#include <vector>

#include "paradise/matrix.hpp"

namespace paradise {

/// Density clustering in the HDBSCAN style: core distances from the
/// min_cluster_size-th neighbor, mutual-reachability MST, single-linkage
/// dendrogram, condensed tree, stability-based cluster extraction.
/// Returns one label per point; -1 marks noise. Fewer points than
/// min_cluster_size yields all noise; identical points yield one cluster.
std::vector<int> density_cluster(const Matrix& points, std::size_t min_cluster_size,
                                 std::uint64_t seed);

} // namespace paradise
