#include "paradise/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "paradise/parallel.hpp"
#include "paradise/rng.hpp"

namespace paradise {

std::vector<double> normalize_minmax(const std::vector<double>& scores) {
    if (scores.empty()) return {};
    double lo = scores[0], hi = scores[0];
    for (double s : scores) {
        if (!std::isfinite(s)) throw std::invalid_argument("normalize_minmax: non-finite score");
        lo = std::min(lo, s);
        hi = std::max(hi, s);
    }
    std::vector<double> out(scores.size(), 0.0);
    if (hi == lo) return out; // degenerate: all equal -> all zeros
    const double range = hi - lo;
    for (std::size_t i = 0; i < scores.size(); ++i) out[i] = (scores[i] - lo) / range;
    return out;
}

std::pair<std::vector<double>, std::vector<int>> fuse(const std::vector<std::vector<double>>& local) {
    if (local.empty()) throw std::invalid_argument("fuse: no parts");
    const std::size_t n = local.front().size();
    for (const auto& row : local)
        if (row.size() != n) throw std::invalid_argument("fuse: ragged local scores");
    std::vector<double> global(n);
    std::vector<int> origin(n);
    for (std::size_t i = 0; i < n; ++i) {
        double best = local[0][i];
        int best_k = 0;
        for (std::size_t k = 1; k < local.size(); ++k) {
            if (local[k][i] > best) { // strict: ties keep the smallest part index
                best = local[k][i];
                best_k = static_cast<int>(k);
            }
        }
        global[i] = best;
        origin[i] = best_k;
    }
    return {std::move(global), std::move(origin)};
}

ScoreBundle run_paradise_split(const TimeSeries& fit, const TimeSeries& score,
                               const Partition& partition, const WindowConfig& window_config,
                               const DetectorConfig& detector_config, int threads) {
    if (!is_valid_partition(partition, score.d()))
        throw std::invalid_argument("run: partition does not cover the series variables");
    if (fit.d() != score.d()) throw std::invalid_argument("run: fit/score variable count mismatch");

    const std::size_t p = partition.size();
    const int outer = std::max(1, std::min<int>(threads, static_cast<int>(p)));
    const int inner = std::max(1, threads / outer);

    ScoreBundle bundle;
    bundle.local.resize(p);
    bundle.normalized.resize(p);
    const bool same_series = &fit == &score;
    parallel_for(p, outer, [&](std::size_t k) {
        try {
            DetectorConfig part_config = detector_config;
            part_config.seed = derive_seed(detector_config.seed, "part", k);
            const Matrix fit_cols = fit.values.select_columns(partition.parts[k]);
            if (same_series) {
                bundle.local[k] = detect_part(fit_cols, fit_cols, window_config, part_config, inner);
            } else {
                const Matrix score_cols = score.values.select_columns(partition.parts[k]);
                bundle.local[k] = detect_part(fit_cols, score_cols, window_config, part_config, inner);
            }
            bundle.normalized[k] = normalize_minmax(bundle.local[k]);
        } catch (const std::exception& e) {
            throw std::runtime_error("part " + std::to_string(k + 1) + ": " + e.what());
        }
    });

    auto [global, origin] = fuse(bundle.normalized);
    bundle.global = std::move(global);
    bundle.origin = std::move(origin);
    return bundle;
}

ScoreBundle run_paradise(const TimeSeries& series, const Partition& partition,
                         const WindowConfig& window_config, const DetectorConfig& detector_config,
                         int threads) {
    return run_paradise_split(series, series, partition, window_config, detector_config, threads);
}

ScoreBundle run_classic(const TimeSeries& series, const WindowConfig& window_config,
                        const DetectorConfig& detector_config, int threads) {
    return run_paradise(series, single_part_partition(series.d()), window_config, detector_config,
                        threads);
}

ScoreBundle run_classic_split(const TimeSeries& fit, const TimeSeries& score,
                              const WindowConfig& window_config,
                              const DetectorConfig& detector_config, int threads) {
    return run_paradise_split(fit, score, single_part_partition(score.d()), window_config,
                              detector_config, threads);
}

ScoreBundle bundle_from_local_scores(std::vector<std::vector<double>> local) {
    ScoreBundle bundle;
    bundle.local = std::move(local);
    bundle.normalized.reserve(bundle.local.size());
    for (const auto& row : bundle.local) bundle.normalized.push_back(normalize_minmax(row));
    auto [global, origin] = fuse(bundle.normalized);
    bundle.global = std::move(global);
    bundle.origin = std::move(origin);
    return bundle;
}

} // namespace paradise
