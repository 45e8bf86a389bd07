#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "paradise/detectors.hpp"
#include "paradise/types.hpp"

namespace paradise {

/// (s - min) / (max - min); all-equal input maps to all zeros.
std::vector<double> normalize_minmax(const std::vector<double>& scores);

/// Per-instant max over normalized local scores; origin is the smallest
/// part index attaining the max. Requires at least one part.
std::pair<std::vector<double>, std::vector<int>> fuse(const std::vector<std::vector<double>>& local);

/// Partition -> local detection -> per-part normalization -> max fusion.
/// Detection fits on `fit` and scores `score`; per-part detector seeds are
/// derived from (seed, part index), so part results do not depend on
/// scheduling. Any part failure aborts with the part identified.
ScoreBundle run_paradise_split(const TimeSeries& fit, const TimeSeries& score,
                               const Partition& partition, const WindowConfig& window_config,
                               const DetectorConfig& detector_config, int threads = 1);

/// Unsupervised variant: fit and score on the same series.
ScoreBundle run_paradise(const TimeSeries& series, const Partition& partition,
                         const WindowConfig& window_config, const DetectorConfig& detector_config,
                         int threads = 1);

/// The unpartitioned baseline: identical to run_paradise with the
/// single-part partition, bit for bit.
ScoreBundle run_classic(const TimeSeries& series, const WindowConfig& window_config,
                        const DetectorConfig& detector_config, int threads = 1);
ScoreBundle run_classic_split(const TimeSeries& fit, const TimeSeries& score,
                              const WindowConfig& window_config,
                              const DetectorConfig& detector_config, int threads = 1);

/// Bundle built from externally computed local scores (one vector per part,
/// e.g. injected from files for detectors that live outside this tool).
ScoreBundle bundle_from_local_scores(std::vector<std::vector<double>> local);

} // namespace paradise
