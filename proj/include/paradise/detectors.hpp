#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "paradise/matrix.hpp"

namespace paradise {

enum class WindowAssignment { LastPoint, Center };

struct WindowConfig {
    std::size_t window = 1; // observations per window, stride 1
    WindowAssignment assignment = WindowAssignment::LastPoint;
};

enum class DetectorKind { IForest, Lof, KMeans, External };

struct DetectorConfig {
    DetectorKind kind = DetectorKind::IForest;
    std::size_t trees = 100;     // iforest
    std::size_t subsample = 256; // iforest
    std::size_t neighbors = 20;  // lof
    std::size_t centroids = 10;  // kmeans
    std::uint64_t seed = 0;
};

DetectorKind detector_kind_from_string(const std::string& s);
std::string detector_kind_name(DetectorKind k);

/// Sliding windows of `window` rows, stride 1, flattened row-major into
/// vectors of length window * cols. n - window + 1 windows.
Matrix windows(const Matrix& part_data, const WindowConfig& config);

/// Window index scoring instant i (the per-instant mapping contract): under
/// LastPoint, instant i takes the window ending at i and the first
/// window - 1 instants inherit the first window; under Center, the window
/// whose center is nearest.
std::size_t window_index_for_instant(std::size_t instant, std::size_t n, const WindowConfig& config);

/// Isolation forest scores in (0, 1): 2^(-E[path]/c(psi)).
std::vector<double> iforest_score(const Matrix& vectors, const DetectorConfig& config,
                                  int threads = 1);
std::vector<double> iforest_score_against(const Matrix& fit, const Matrix& queries,
                                          const DetectorConfig& config, int threads = 1);
/// Average path length of an unsuccessful BST search, c(m); 0 for m <= 1.
double iforest_c(std::size_t m);
/// Score from an average path length; lets the formula be checked directly.
double iforest_score_from_path(double avg_path, std::size_t psi);

/// Classical LOF (k-distance, reachability, lrd ratio); >= 0, finite.
std::vector<double> lof_score(const Matrix& vectors, const DetectorConfig& config, int threads = 1);
std::vector<double> lof_score_against(const Matrix& fit, const Matrix& queries,
                                      const DetectorConfig& config, int threads = 1);

/// Distance to the nearest of `centroids` k-means centers fit on the data.
std::vector<double> kmeans_score(const Matrix& vectors, const DetectorConfig& config);
std::vector<double> kmeans_score_against(const Matrix& fit, const Matrix& queries,
                                         const DetectorConfig& config);

/// Full local detector: standardize per variable (fit statistics), window,
/// score, map window scores back to the n instants of `part_score`.
/// `part_fit` and `part_score` may be the same matrix (unsupervised fit).
std::vector<double> detect_part(const Matrix& part_fit, const Matrix& part_score,
                                const WindowConfig& window_config,
                                const DetectorConfig& detector_config, int threads = 1);

} // namespace paradise
