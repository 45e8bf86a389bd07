#include "paradise/detectors.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numeric>
#include <random>
#include <stdexcept>

#include "paradise/kmeans.hpp"
#include "paradise/parallel.hpp"
#include "paradise/rng.hpp"

namespace paradise {

namespace {

constexpr double kLrdCap = 1e10; // duplicate-point convention: lrd stays finite

double sq_dist(const double* a, const double* b, std::size_t dims) {
    double acc = 0.0;
    for (std::size_t j = 0; j < dims; ++j) {
        const double diff = a[j] - b[j];
        acc += diff * diff;
    }
    return acc;
}

// ---------------------------------------------------------------------------
// Isolation forest

struct IsoNode {
    int feature = -1; // -1 marks a leaf
    double split = 0.0;
    int left = -1, right = -1;
    std::size_t size = 0;
};

struct IsoTree {
    std::vector<IsoNode> nodes;
};

IsoTree build_iso_tree(const Matrix& data, const std::vector<std::size_t>& sample,
                       std::size_t height_limit, std::mt19937_64& rng) {
    IsoTree tree;
    struct Item {
        std::vector<std::size_t> idx;
        std::size_t depth;
        int node;
    };
    tree.nodes.push_back({});
    std::vector<Item> stack;
    stack.push_back({sample, 0, 0});
    const std::size_t dims = data.cols();
    std::vector<std::size_t> usable;
    while (!stack.empty()) {
        Item item = std::move(stack.back());
        stack.pop_back();
        IsoNode& node = tree.nodes[static_cast<std::size_t>(item.node)];
        node.size = item.idx.size();
        if (item.idx.size() <= 1 || item.depth >= height_limit) continue; // leaf

        usable.clear();
        for (std::size_t f = 0; f < dims; ++f) {
            double lo = data(item.idx[0], f), hi = lo;
            for (std::size_t i : item.idx) {
                lo = std::min(lo, data(i, f));
                hi = std::max(hi, data(i, f));
            }
            if (hi > lo) usable.push_back(f);
        }
        if (usable.empty()) continue; // all duplicate rows: leaf

        std::uniform_int_distribution<std::size_t> pick(0, usable.size() - 1);
        const std::size_t f = usable[pick(rng)];
        double lo = data(item.idx[0], f), hi = lo;
        for (std::size_t i : item.idx) {
            lo = std::min(lo, data(i, f));
            hi = std::max(hi, data(i, f));
        }
        std::uniform_real_distribution<double> usplit(lo, hi);
        const double split = usplit(rng);

        std::vector<std::size_t> left, right;
        for (std::size_t i : item.idx) (data(i, f) < split ? left : right).push_back(i);
        if (left.empty() || right.empty()) continue; // degenerate draw: leaf

        node.feature = static_cast<int>(f);
        node.split = split;
        node.left = static_cast<int>(tree.nodes.size());
        tree.nodes.push_back({});
        node.right = static_cast<int>(tree.nodes.size());
        tree.nodes.push_back({});
        const int left_id = tree.nodes[static_cast<std::size_t>(item.node)].left;
        const int right_id = tree.nodes[static_cast<std::size_t>(item.node)].right;
        stack.push_back({std::move(left), item.depth + 1, left_id});
        stack.push_back({std::move(right), item.depth + 1, right_id});
    }
    return tree;
}

double iso_path_length(const IsoTree& tree, const double* x) {
    std::size_t node = 0;
    double depth = 0.0;
    while (tree.nodes[node].feature >= 0) {
        node = static_cast<std::size_t>(x[tree.nodes[node].feature] < tree.nodes[node].split
                                            ? tree.nodes[node].left
                                            : tree.nodes[node].right);
        depth += 1.0;
    }
    return depth + iforest_c(tree.nodes[node].size);
}

std::vector<std::size_t> sample_without_replacement(std::size_t n, std::size_t count,
                                                    std::mt19937_64& rng) {
    std::vector<std::size_t> all(n);
    std::iota(all.begin(), all.end(), std::size_t{0});
    for (std::size_t i = 0; i < count; ++i) {
        std::uniform_int_distribution<std::size_t> pick(i, n - 1);
        std::swap(all[i], all[pick(rng)]);
    }
    all.resize(count);
    return all;
}

// ---------------------------------------------------------------------------
// LOF helpers

struct KnnTable {
    std::vector<std::vector<std::size_t>> neighbors; // k nearest, by (dist, index)
    std::vector<double> kdist;
};

/// Exact k-NN within `fit`, excluding self when self_index >= 0.
void knn_row(const Matrix& fit, const double* query, long self_index, std::size_t k,
             std::vector<std::size_t>& out_idx, double& out_kdist) {
    const std::size_t n = fit.rows();
    std::vector<std::pair<double, std::size_t>> cand;
    cand.reserve(n);
    for (std::size_t j = 0; j < n; ++j) {
        if (self_index >= 0 && j == static_cast<std::size_t>(self_index)) continue;
        cand.emplace_back(sq_dist(query, fit.row_ptr(j), fit.cols()), j);
    }
    std::partial_sort(cand.begin(), cand.begin() + static_cast<long>(k), cand.end());
    out_idx.resize(k);
    for (std::size_t j = 0; j < k; ++j) out_idx[j] = cand[j].second;
    out_kdist = std::sqrt(cand[k - 1].first);
}

KnnTable knn_table(const Matrix& fit, std::size_t k, int threads) {
    KnnTable table;
    table.neighbors.resize(fit.rows());
    table.kdist.resize(fit.rows());
    parallel_for(fit.rows(), threads, [&](std::size_t i) {
        knn_row(fit, fit.row_ptr(i), static_cast<long>(i), k, table.neighbors[i], table.kdist[i]);
    });
    return table;
}

std::vector<double> lrd_from_table(const Matrix& fit, const KnnTable& table, std::size_t k) {
    std::vector<double> lrd(fit.rows());
    for (std::size_t i = 0; i < fit.rows(); ++i) {
        double sum = 0.0;
        for (std::size_t b : table.neighbors[i]) {
            const double d = std::sqrt(sq_dist(fit.row_ptr(i), fit.row_ptr(b), fit.cols()));
            sum += std::max(table.kdist[b], d); // reachability distance
        }
        const double mean = sum / static_cast<double>(k);
        lrd[i] = mean > 1.0 / kLrdCap ? 1.0 / mean : kLrdCap;
    }
    return lrd;
}

// ---------------------------------------------------------------------------
// Standardization

struct ColumnStats {
    std::vector<double> mean, scale;
};

ColumnStats fit_stats(const Matrix& data) {
    ColumnStats st;
    st.mean.resize(data.cols());
    st.scale.resize(data.cols());
    for (std::size_t j = 0; j < data.cols(); ++j) {
        double m = 0.0;
        for (std::size_t i = 0; i < data.rows(); ++i) m += data(i, j);
        m /= static_cast<double>(data.rows());
        double var = 0.0;
        for (std::size_t i = 0; i < data.rows(); ++i) {
            const double dv = data(i, j) - m;
            var += dv * dv;
        }
        var /= static_cast<double>(data.rows());
        st.mean[j] = m;
        st.scale[j] = var > 1e-24 ? std::sqrt(var) : 1.0;
    }
    return st;
}

Matrix standardize(const Matrix& data, const ColumnStats& st) {
    Matrix out(data.rows(), data.cols());
    for (std::size_t i = 0; i < data.rows(); ++i)
        for (std::size_t j = 0; j < data.cols(); ++j)
            out(i, j) = (data(i, j) - st.mean[j]) / st.scale[j];
    return out;
}

} // namespace

DetectorKind detector_kind_from_string(const std::string& s) {
    if (s == "iforest") return DetectorKind::IForest;
    if (s == "lof") return DetectorKind::Lof;
    if (s == "kmeans") return DetectorKind::KMeans;
    if (s == "external") return DetectorKind::External;
    throw std::invalid_argument("unknown detector '" + s + "'");
}

std::string detector_kind_name(DetectorKind k) {
    switch (k) {
    case DetectorKind::IForest: return "iforest";
    case DetectorKind::Lof: return "lof";
    case DetectorKind::KMeans: return "kmeans";
    case DetectorKind::External: return "external";
    }
    return "?";
}

Matrix windows(const Matrix& part_data, const WindowConfig& config) {
    const std::size_t n = part_data.rows();
    const std::size_t m = part_data.cols();
    const std::size_t w = config.window;
    if (w < 1 || w > n)
        throw std::invalid_argument("windows: need 1 <= window <= n, got window=" +
                                    std::to_string(w) + ", n=" + std::to_string(n));
    Matrix out(n - w + 1, w * m);
    for (std::size_t t = 0; t + w <= n; ++t)
        for (std::size_t r = 0; r < w; ++r)
            for (std::size_t j = 0; j < m; ++j) out(t, r * m + j) = part_data(t + r, j);
    return out;
}

std::size_t window_index_for_instant(std::size_t instant, std::size_t n,
                                     const WindowConfig& config) {
    const std::size_t w = config.window;
    const std::size_t last = n - w; // highest window start
    long start;
    if (config.assignment == WindowAssignment::LastPoint) {
        start = static_cast<long>(instant) - static_cast<long>(w) + 1;
    } else {
        start = static_cast<long>(instant) - static_cast<long>((w - 1) / 2);
    }
    return static_cast<std::size_t>(std::clamp<long>(start, 0, static_cast<long>(last)));
}

double iforest_c(std::size_t m) {
    if (m <= 1) return 0.0;
    if (m == 2) return 1.0;
    const double x = static_cast<double>(m - 1);
    constexpr double kEulerGamma = 0.5772156649015329;
    const double harmonic = std::log(x) + kEulerGamma;
    return 2.0 * harmonic - 2.0 * x / static_cast<double>(m);
}

double iforest_score_from_path(double avg_path, std::size_t psi) {
    return std::pow(2.0, -avg_path / iforest_c(psi));
}

std::vector<double> iforest_score_against(const Matrix& fit, const Matrix& queries,
                                          const DetectorConfig& config, int threads) {
    if (fit.rows() < 2) throw std::invalid_argument("iforest: need at least 2 vectors");
    const std::size_t psi = std::min<std::size_t>(config.subsample, fit.rows());
    const std::size_t height_limit =
        static_cast<std::size_t>(std::ceil(std::log2(static_cast<double>(std::max<std::size_t>(psi, 2)))));

    std::vector<IsoTree> forest(config.trees);
    parallel_for(config.trees, threads, [&](std::size_t t) {
        std::mt19937_64 rng(derive_seed(config.seed, "iforest-tree", t));
        const auto sample = sample_without_replacement(fit.rows(), psi, rng);
        forest[t] = build_iso_tree(fit, sample, height_limit, rng);
    });

    std::vector<double> scores(queries.rows());
    const double cpsi = iforest_c(psi);
    parallel_for(queries.rows(), threads, [&](std::size_t i) {
        double total = 0.0;
        for (const auto& tree : forest) total += iso_path_length(tree, queries.row_ptr(i));
        scores[i] = std::pow(2.0, -(total / static_cast<double>(config.trees)) / cpsi);
    });
    return scores;
}

std::vector<double> iforest_score(const Matrix& vectors, const DetectorConfig& config, int threads) {
    return iforest_score_against(vectors, vectors, config, threads);
}

std::vector<double> lof_score(const Matrix& vectors, const DetectorConfig& config, int threads) {
    const std::size_t k = config.neighbors;
    if (vectors.rows() <= k)
        throw std::invalid_argument("lof: need more vectors than neighbors (" +
                                    std::to_string(vectors.rows()) + " <= " + std::to_string(k) + ")");
    const KnnTable table = knn_table(vectors, k, threads);
    const auto lrd = lrd_from_table(vectors, table, k);
    std::vector<double> out(vectors.rows());
    for (std::size_t i = 0; i < vectors.rows(); ++i) {
        double sum = 0.0;
        for (std::size_t b : table.neighbors[i]) sum += lrd[b];
        out[i] = sum / (static_cast<double>(k) * lrd[i]);
    }
    return out;
}

std::vector<double> lof_score_against(const Matrix& fit, const Matrix& queries,
                                      const DetectorConfig& config, int threads) {
    const std::size_t k = config.neighbors;
    if (fit.rows() <= k) throw std::invalid_argument("lof: need more fit vectors than neighbors");
    const KnnTable table = knn_table(fit, k, threads);
    const auto lrd = lrd_from_table(fit, table, k);

    std::vector<double> out(queries.rows());
    parallel_for(queries.rows(), threads, [&](std::size_t i) {
        std::vector<std::size_t> nn;
        double kd = 0.0;
        knn_row(fit, queries.row_ptr(i), -1, k, nn, kd);
        double reach_sum = 0.0, lrd_sum = 0.0;
        for (std::size_t b : nn) {
            const double d = std::sqrt(sq_dist(queries.row_ptr(i), fit.row_ptr(b), fit.cols()));
            reach_sum += std::max(table.kdist[b], d);
            lrd_sum += lrd[b];
        }
        const double mean_reach = reach_sum / static_cast<double>(k);
        const double lrd_q = mean_reach > 1.0 / kLrdCap ? 1.0 / mean_reach : kLrdCap;
        out[i] = lrd_sum / (static_cast<double>(k) * lrd_q);
    });
    return out;
}

std::vector<double> kmeans_score_against(const Matrix& fit, const Matrix& queries,
                                         const DetectorConfig& config) {
    std::size_t k = config.centroids;
    if (k < 1) throw std::invalid_argument("kmeans detector: centroids >= 1");
    if (fit.rows() < k) {
        std::fprintf(stderr, "kmeans detector: reducing centroids from %zu to %zu points\n", k,
                     fit.rows());
        k = fit.rows();
    }
    const auto model = kmeans_fit(fit, k, derive_seed(config.seed, "kmeans-detector"));
    return nearest_centroid_distance(queries, model.centroids);
}

std::vector<double> kmeans_score(const Matrix& vectors, const DetectorConfig& config) {
    return kmeans_score_against(vectors, vectors, config);
}

std::vector<double> detect_part(const Matrix& part_fit, const Matrix& part_score,
                                const WindowConfig& window_config,
                                const DetectorConfig& detector_config, int threads) {
    if (part_fit.cols() != part_score.cols())
        throw std::invalid_argument("detect_part: fit/score variable count mismatch");
    const std::size_t n = part_score.rows();

    const ColumnStats stats = fit_stats(part_fit);
    const Matrix fit_std = standardize(part_fit, stats);
    const bool same = &part_fit == &part_score;
    const Matrix score_std = same ? fit_std : standardize(part_score, stats);

    const Matrix fit_windows = windows(fit_std, window_config);
    const Matrix score_windows = same ? fit_windows : windows(score_std, window_config);

    std::vector<double> window_scores;
    switch (detector_config.kind) {
    case DetectorKind::IForest:
        window_scores = iforest_score_against(fit_windows, score_windows, detector_config, threads);
        break;
    case DetectorKind::Lof:
        window_scores = same ? lof_score(fit_windows, detector_config, threads)
                             : lof_score_against(fit_windows, score_windows, detector_config, threads);
        break;
    case DetectorKind::KMeans:
        window_scores = kmeans_score_against(fit_windows, score_windows, detector_config);
        break;
    case DetectorKind::External:
        throw std::invalid_argument("external scores are injected from files, not computed");
    }

    std::vector<double> per_instant(n);
    for (std::size_t i = 0; i < n; ++i)
        per_instant[i] = window_scores[window_index_for_instant(i, n, window_config)];
    return per_instant;
}

} // namespace paradise
