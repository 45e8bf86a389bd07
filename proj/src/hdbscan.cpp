#include "paradise/hdbscan.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace paradise {

namespace {

// Lambda = 1/distance with zero-distance merges capped so exact duplicates
// stay finite and comparable.
constexpr double kMinDistance = 1e-10;
constexpr double kMaxLambda = 1e10;

double euclid(const Matrix& pts, std::size_t a, std::size_t b) {
    double acc = 0.0;
    for (std::size_t j = 0; j < pts.cols(); ++j) {
        const double diff = pts(a, j) - pts(b, j);
        acc += diff * diff;
    }
    return std::sqrt(acc);
}

struct MstEdge {
    std::size_t a, b;
    double weight;
};

struct SltNode {
    std::size_t left, right;
    double distance;
    std::size_t size;
};

struct CondensedCluster {
    std::size_t parent;                 // parent cluster id; root points to itself
    double birth_lambda;
    double stability = 0.0;
    std::vector<std::size_t> child_clusters;
    std::vector<std::size_t> points;    // points that fall out of this cluster
};

} // namespace

std::vector<int> density_cluster(const Matrix& points, std::size_t min_cluster_size,
                                 [[maybe_unused]] std::uint64_t seed) {
    if (min_cluster_size < 2) throw std::invalid_argument("density_cluster: min_cluster_size >= 2");
    const std::size_t n = points.rows();
    std::vector<int> labels(n, -1);
    if (n == 0) return labels;
    if (n < min_cluster_size) return labels; // too few points to form any cluster

    bool all_identical = true;
    for (std::size_t i = 1; i < n && all_identical; ++i)
        for (std::size_t j = 0; j < points.cols(); ++j)
            if (points(i, j) != points(0, j)) {
                all_identical = false;
                break;
            }
    if (all_identical) {
        std::fill(labels.begin(), labels.end(), 0); // zero-diameter input
        return labels;
    }

    // Core distance: distance to the min_cluster_size-th nearest neighbor
    // (excluding self), clamped to the available neighbor count.
    const std::size_t k = std::min(min_cluster_size, n - 1);
    std::vector<double> core(n);
    {
        std::vector<double> dists(n);
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) dists[j] = euclid(points, i, j);
            std::nth_element(dists.begin(), dists.begin() + static_cast<long>(k), dists.end());
            core[i] = dists[k]; // index k == k-th neighbor since dists[i] = 0 is included
        }
    }
    auto mutual_reach = [&](std::size_t a, std::size_t b) {
        return std::max({core[a], core[b], euclid(points, a, b)});
    };

    // Exact MST over the mutual-reachability graph (Prim, O(n^2)).
    std::vector<MstEdge> edges;
    edges.reserve(n - 1);
    {
        std::vector<char> in_tree(n, 0);
        std::vector<double> best(n, std::numeric_limits<double>::infinity());
        std::vector<std::size_t> best_from(n, 0);
        in_tree[0] = 1;
        for (std::size_t j = 1; j < n; ++j) {
            best[j] = mutual_reach(0, j);
            best_from[j] = 0;
        }
        for (std::size_t added = 1; added < n; ++added) {
            std::size_t next = n;
            double next_w = std::numeric_limits<double>::infinity();
            for (std::size_t j = 0; j < n; ++j) {
                if (!in_tree[j] && best[j] < next_w) {
                    next_w = best[j];
                    next = j;
                }
            }
            in_tree[next] = 1;
            edges.push_back({best_from[next], next, next_w});
            for (std::size_t j = 0; j < n; ++j) {
                if (in_tree[j]) continue;
                const double w = mutual_reach(next, j);
                if (w < best[j]) {
                    best[j] = w;
                    best_from[j] = next;
                }
            }
        }
    }
    std::stable_sort(edges.begin(), edges.end(),
                     [](const MstEdge& a, const MstEdge& b) { return a.weight < b.weight; });

    // Single-linkage dendrogram: nodes 0..n-1 are points, n..2n-2 merges.
    std::vector<SltNode> slt(n - 1);
    std::vector<std::size_t> uf_parent(2 * n - 1);
    std::iota(uf_parent.begin(), uf_parent.end(), std::size_t{0});
    auto find_root = [&](std::size_t x) {
        while (uf_parent[x] != x) {
            uf_parent[x] = uf_parent[uf_parent[x]];
            x = uf_parent[x];
        }
        return x;
    };
    std::vector<std::size_t> comp_size(2 * n - 1, 1);
    for (std::size_t e = 0; e < edges.size(); ++e) {
        const std::size_t ra = find_root(edges[e].a);
        const std::size_t rb = find_root(edges[e].b);
        const std::size_t merged = n + e;
        slt[e] = {ra, rb, edges[e].weight, comp_size[ra] + comp_size[rb]};
        uf_parent[ra] = merged;
        uf_parent[rb] = merged;
        comp_size[merged] = slt[e].size;
    }

    auto node_size = [&](std::size_t node) { return node < n ? std::size_t{1} : slt[node - n].size; };
    auto collect_leaves = [&](std::size_t node, std::vector<std::size_t>& out) {
        std::vector<std::size_t> stack{node};
        while (!stack.empty()) {
            const std::size_t cur = stack.back();
            stack.pop_back();
            if (cur < n) {
                out.push_back(cur);
            } else {
                stack.push_back(slt[cur - n].left);
                stack.push_back(slt[cur - n].right);
            }
        }
    };

    // Condensed tree.
    std::vector<CondensedCluster> clusters;
    clusters.push_back({0, 0.0, 0.0, {}, {}}); // root, born at lambda 0
    struct WalkItem {
        std::size_t slt_node;
        std::size_t cluster;
    };
    std::vector<WalkItem> stack{{2 * n - 2, 0}};
    while (!stack.empty()) {
        const auto [node, cluster] = stack.back();
        stack.pop_back();
        const SltNode& merge = slt[node - n];
        const double lambda = merge.distance <= kMinDistance ? kMaxLambda : 1.0 / merge.distance;
        const std::size_t children[2] = {merge.left, merge.right};
        const std::size_t sizes[2] = {node_size(merge.left), node_size(merge.right)};

        if (sizes[0] >= min_cluster_size && sizes[1] >= min_cluster_size) {
            for (int c = 0; c < 2; ++c) {
                const std::size_t child_id = clusters.size();
                clusters.push_back({cluster, lambda, 0.0, {}, {}});
                clusters[cluster].child_clusters.push_back(child_id);
                clusters[cluster].stability +=
                    (lambda - clusters[cluster].birth_lambda) * static_cast<double>(sizes[c]);
                stack.push_back({children[c], child_id});
            }
        } else {
            for (int c = 0; c < 2; ++c) {
                if (sizes[c] >= min_cluster_size) {
                    stack.push_back({children[c], cluster}); // cluster continues
                } else {
                    std::vector<std::size_t> leaves;
                    collect_leaves(children[c], leaves);
                    for (std::size_t p : leaves) {
                        clusters[cluster].points.push_back(p);
                        clusters[cluster].stability += lambda - clusters[cluster].birth_lambda;
                    }
                }
            }
        }
    }

    // Excess-of-mass selection; the root is only a fallback for degenerate
    // inputs and is never selected once real child clusters exist.
    const std::size_t num_clusters = clusters.size();
    std::vector<double> score(num_clusters, 0.0);
    std::vector<char> selected(num_clusters, 0);
    for (std::size_t c = num_clusters; c-- > 1;) {
        double child_sum = 0.0;
        for (std::size_t ch : clusters[c].child_clusters) child_sum += score[ch];
        if (clusters[c].child_clusters.empty() || clusters[c].stability >= child_sum) {
            selected[c] = 1;
            score[c] = clusters[c].stability;
        } else {
            score[c] = child_sum;
        }
    }

    // Keep only the highest selected clusters on each root-to-leaf path.
    std::vector<std::size_t> final_clusters;
    {
        std::vector<std::size_t> walk;
        for (std::size_t ch : clusters[0].child_clusters) walk.push_back(ch);
        while (!walk.empty()) {
            const std::size_t c = walk.back();
            walk.pop_back();
            if (selected[c]) {
                final_clusters.push_back(c);
            } else {
                for (std::size_t ch : clusters[c].child_clusters) walk.push_back(ch);
            }
        }
        std::sort(final_clusters.begin(), final_clusters.end());
    }

    for (std::size_t li = 0; li < final_clusters.size(); ++li) {
        std::vector<std::size_t> subtree{final_clusters[li]};
        while (!subtree.empty()) {
            const std::size_t c = subtree.back();
            subtree.pop_back();
            for (std::size_t p : clusters[c].points) labels[p] = static_cast<int>(li);
            for (std::size_t ch : clusters[c].child_clusters) subtree.push_back(ch);
        }
    }
    return labels;
}

} // namespace paradise
