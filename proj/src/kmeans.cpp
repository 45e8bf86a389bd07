#include "paradise/kmeans.hpp"

#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

namespace paradise {

namespace {

double sq_dist(const double* a, const double* b, std::size_t dims) {
    double acc = 0.0;
    for (std::size_t j = 0; j < dims; ++j) {
        const double diff = a[j] - b[j];
        acc += diff * diff;
    }
    return acc;
}

Matrix kmeanspp_init(const Matrix& points, std::size_t k, std::mt19937_64& rng) {
    const std::size_t n = points.rows();
    const std::size_t dims = points.cols();
    Matrix centroids(k, dims);
    std::uniform_int_distribution<std::size_t> pick(0, n - 1);
    std::size_t first = pick(rng);
    for (std::size_t j = 0; j < dims; ++j) centroids(0, j) = points(first, j);

    std::vector<double> d2(n, 0.0);
    for (std::size_t c = 1; c < k; ++c) {
        double total = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            double best = std::numeric_limits<double>::infinity();
            for (std::size_t cc = 0; cc < c; ++cc)
                best = std::min(best, sq_dist(points.row_ptr(i), centroids.row_ptr(cc), dims));
            d2[i] = best;
            total += best;
        }
        std::size_t chosen;
        if (total <= 0.0) {
            chosen = pick(rng); // all points coincide with a centroid already
        } else {
            std::uniform_real_distribution<double> u(0.0, total);
            double target = u(rng);
            chosen = n - 1;
            for (std::size_t i = 0; i < n; ++i) {
                target -= d2[i];
                if (target <= 0.0) {
                    chosen = i;
                    break;
                }
            }
        }
        for (std::size_t j = 0; j < dims; ++j) centroids(c, j) = points(chosen, j);
    }
    return centroids;
}

} // namespace

KMeansResult kmeans_fit(const Matrix& points, std::size_t k, std::uint64_t seed) {
    const std::size_t n = points.rows();
    const std::size_t dims = points.cols();
    if (n == 0) throw std::invalid_argument("kmeans_fit: no points");
    if (k < 1 || k > n) throw std::invalid_argument("kmeans_fit: need 1 <= k <= point count");

    std::mt19937_64 rng(seed);
    KMeansResult res;
    res.centroids = kmeanspp_init(points, k, rng);
    res.assignment.assign(n, 0);

    constexpr int kMaxIterations = 300;
    constexpr double kShiftTolerance = 1e-6;

    std::vector<std::size_t> counts(k, 0);
    Matrix sums(k, dims);
    for (int iter = 0; iter < kMaxIterations; ++iter) {
        res.iterations = iter + 1;
        std::fill(counts.begin(), counts.end(), std::size_t{0});
        std::fill(sums.data().begin(), sums.data().end(), 0.0);
        res.inertia = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            double best = std::numeric_limits<double>::infinity();
            int best_c = 0;
            for (std::size_t c = 0; c < k; ++c) {
                const double dd = sq_dist(points.row_ptr(i), res.centroids.row_ptr(c), dims);
                if (dd < best) {
                    best = dd;
                    best_c = static_cast<int>(c);
                }
            }
            res.assignment[i] = best_c;
            res.inertia += best;
            counts[static_cast<std::size_t>(best_c)]++;
            double* srow = sums.row_ptr(static_cast<std::size_t>(best_c));
            const double* prow = points.row_ptr(i);
            for (std::size_t j = 0; j < dims; ++j) srow[j] += prow[j];
        }

        // Re-seed empty clusters from the point farthest from its centroid.
        for (std::size_t c = 0; c < k; ++c) {
            if (counts[c] != 0) continue;
            double worst = -1.0;
            std::size_t far_point = 0;
            for (std::size_t i = 0; i < n; ++i) {
                const double dd = sq_dist(points.row_ptr(i),
                                          res.centroids.row_ptr(static_cast<std::size_t>(res.assignment[i])), dims);
                if (dd > worst) {
                    worst = dd;
                    far_point = i;
                }
            }
            counts[c] = 1;
            double* srow = sums.row_ptr(c);
            const double* prow = points.row_ptr(far_point);
            for (std::size_t j = 0; j < dims; ++j) srow[j] = prow[j];
        }

        double max_shift = 0.0;
        for (std::size_t c = 0; c < k; ++c) {
            double shift = 0.0;
            for (std::size_t j = 0; j < dims; ++j) {
                const double updated = sums(c, j) / static_cast<double>(counts[c]);
                const double diff = updated - res.centroids(c, j);
                shift += diff * diff;
                res.centroids(c, j) = updated;
            }
            max_shift = std::max(max_shift, std::sqrt(shift));
        }
        if (max_shift < kShiftTolerance) break;
    }

    // Final assignment against the converged centroids.
    res.inertia = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double best = std::numeric_limits<double>::infinity();
        int best_c = 0;
        for (std::size_t c = 0; c < k; ++c) {
            const double dd = sq_dist(points.row_ptr(i), res.centroids.row_ptr(c), dims);
            if (dd < best) {
                best = dd;
                best_c = static_cast<int>(c);
            }
        }
        res.assignment[i] = best_c;
        res.inertia += best;
    }
    return res;
}

std::vector<int> kmeans_cluster(const Matrix& points, std::size_t k, std::uint64_t seed) {
    return kmeans_fit(points, k, seed).assignment;
}

std::vector<double> nearest_centroid_distance(const Matrix& points, const Matrix& centroids) {
    std::vector<double> out(points.rows());
    for (std::size_t i = 0; i < points.rows(); ++i) {
        double best = std::numeric_limits<double>::infinity();
        for (std::size_t c = 0; c < centroids.rows(); ++c)
            best = std::min(best, sq_dist(points.row_ptr(i), centroids.row_ptr(c), points.cols()));
        out[i] = std::sqrt(best);
    }
    return out;
}

} // namespace paradise
