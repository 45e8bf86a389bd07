#pragma once

#include <functional>
#include <string>
#include <vector>

#include "paradise/correlation.hpp"
#include "paradise/detectors.hpp"
#include "paradise/generator.hpp"
#include "paradise/partitioner.hpp"
#include "paradise/types.hpp"

namespace paradise {

struct RocPoint {
    double fpr;
    double tpr;
    double threshold;
};

/// ROC points over all distinct score thresholds, descending, with the
/// (0,0) and (1,1) endpoints. Labels must contain both classes.
std::vector<RocPoint> roc_curve(const std::vector<double>& scores, const LabelVector& labels);

/// Trapezoidal area under the curve.
double auc(const std::vector<RocPoint>& curve);

struct F1Result {
    double f1 = 0.0;
    double precision = 0.0;
    double recall = 0.0;
    double threshold = 0.0;
};

/// Best F1 over all candidate thresholds (midpoints between consecutive
/// distinct scores plus +-inf sentinels); predictions are score >= threshold.
F1Result best_f1(const std::vector<double>& scores, const LabelVector& labels);

/// Chance-corrected agreement between two partitions of the same variables.
/// 1 for identical partitions, about 0 for independent ones.
double adjusted_rand_index(const Partition& a, const Partition& b);

// ---------------------------------------------------------------------------
// Benchmark harness

enum class RunMode { Classic, Paradise, Ideal };

std::string run_mode_name(RunMode m);
RunMode run_mode_from_string(const std::string& s);

struct BenchmarkDataset {
    std::string id;
    GeneratorSpec spec;
};

struct BenchmarkConfig {
    std::vector<BenchmarkDataset> datasets;
    std::vector<DetectorConfig> detectors;
    std::vector<RunMode> modes = {RunMode::Classic, RunMode::Paradise, RunMode::Ideal};
    WindowConfig window;
    PartitionerConfig partitioner; // candidate sweep for the paradise mode
    CorrelationConfig correlation;
    int threads = 1;
};

struct BenchmarkRow {
    std::string dataset;
    std::string detector;
    std::string mode;
    double f1 = 0.0;
    double precision = 0.0;
    double recall = 0.0;
    double roc_auc = 0.0;
    double ari = 0.0;      // chosen partition vs ground truth
    std::size_t parts = 0;
    std::string partition_source;
};

struct BenchmarkSummary {
    std::string detector;
    std::string mode;
    double f1 = 0.0, precision = 0.0, recall = 0.0, roc_auc = 0.0, ari = 0.0;
    std::size_t count = 0;
};

/// Runs every (dataset, detector, mode) cell in a deterministic order. The
/// paradise mode follows the supervised protocol: all clustering candidates
/// are scored end to end and the best final ROC-AUC wins. `sink`, when set,
/// receives each row as soon as it is computed so partial results survive a
/// failure.
std::vector<BenchmarkRow> benchmark(const BenchmarkConfig& config,
                                    const std::function<void(const BenchmarkRow&)>& sink = {});

/// Mean of each metric per (detector, mode), in first-seen order.
std::vector<BenchmarkSummary> summarize(const std::vector<BenchmarkRow>& rows);

std::string format_summary_table(const std::vector<BenchmarkSummary>& summary);

} // namespace paradise
