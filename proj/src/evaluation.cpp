#include "paradise/evaluation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "paradise/pipeline.hpp"

namespace paradise {

namespace {

void require_scores_labels(const std::vector<double>& scores, const LabelVector& labels) {
    if (scores.size() != labels.size())
        throw std::invalid_argument("scores and labels must have the same length");
    if (scores.empty()) throw std::invalid_argument("empty scores");
}

double comb2(double x) { return x * (x - 1.0) / 2.0; }

} // namespace

std::vector<RocPoint> roc_curve(const std::vector<double>& scores, const LabelVector& labels) {
    require_scores_labels(scores, labels);
    const std::size_t n = scores.size();
    std::size_t pos = labels.positives();
    std::size_t neg = n - pos;
    if (pos == 0 || neg == 0) throw DataError("roc_curve: labels contain a single class");

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return scores[a] > scores[b]; });

    std::vector<RocPoint> curve;
    curve.push_back({0.0, 0.0, std::numeric_limits<double>::infinity()});
    std::size_t tp = 0, fp = 0;
    std::size_t i = 0;
    while (i < n) {
        const double s = scores[order[i]];
        while (i < n && scores[order[i]] == s) {
            if (labels.labels[order[i]] != 0) ++tp;
            else ++fp;
            ++i;
        }
        curve.push_back({static_cast<double>(fp) / static_cast<double>(neg),
                         static_cast<double>(tp) / static_cast<double>(pos), s});
    }
    return curve; // last point is (1,1) at the lowest score
}

double auc(const std::vector<RocPoint>& curve) {
    if (curve.size() < 2) throw std::invalid_argument("auc: need at least 2 curve points");
    double area = 0.0;
    for (std::size_t i = 1; i < curve.size(); ++i)
        area += (curve[i].fpr - curve[i - 1].fpr) * (curve[i].tpr + curve[i - 1].tpr) / 2.0;
    return area;
}

F1Result best_f1(const std::vector<double>& scores, const LabelVector& labels) {
    require_scores_labels(scores, labels);
    const std::size_t n = scores.size();
    const std::size_t pos = labels.positives();
    if (pos == 0) throw DataError("best_f1: no positive labels");

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return scores[a] > scores[b]; });

    // Candidate thresholds in descending order: +inf, midpoints between
    // consecutive distinct scores, -inf. The set of predictions for each is
    // a prefix of the descending order.
    auto f1_for_prefix = [&](std::size_t count, std::size_t tp, double threshold) {
        F1Result r;
        r.threshold = threshold;
        if (count == 0 || tp == 0) return r; // precision convention: 0 when undefined
        r.precision = static_cast<double>(tp) / static_cast<double>(count);
        r.recall = static_cast<double>(tp) / static_cast<double>(pos);
        r.f1 = 2.0 * r.precision * r.recall / (r.precision + r.recall);
        return r;
    };

    F1Result best = f1_for_prefix(0, 0, std::numeric_limits<double>::infinity());
    std::size_t tp = 0;
    std::size_t i = 0;
    while (i < n) {
        const double s = scores[order[i]];
        while (i < n && scores[order[i]] == s) {
            if (labels.labels[order[i]] != 0) ++tp;
            ++i;
        }
        const double threshold = i < n
                                     ? (s + scores[order[i]]) / 2.0
                                     : -std::numeric_limits<double>::infinity();
        const F1Result cand = f1_for_prefix(i, tp, threshold);
        if (cand.f1 > best.f1) best = cand;
    }
    return best;
}

double adjusted_rand_index(const Partition& a, const Partition& b) {
    std::size_t d = 0;
    for (const auto& part : a.parts) d += part.size();
    if (!is_valid_partition(a, d) || !is_valid_partition(b, d))
        throw std::invalid_argument("adjusted_rand_index: partitions must cover the same variables");

    std::vector<int> la(d), lb(d);
    for (std::size_t k = 0; k < a.parts.size(); ++k)
        for (std::size_t j : a.parts[k]) la[j] = static_cast<int>(k);
    for (std::size_t k = 0; k < b.parts.size(); ++k)
        for (std::size_t j : b.parts[k]) lb[j] = static_cast<int>(k);

    Matrix contingency(a.parts.size(), b.parts.size(), 0.0);
    for (std::size_t j = 0; j < d; ++j)
        contingency(static_cast<std::size_t>(la[j]), static_cast<std::size_t>(lb[j])) += 1.0;

    double index = 0.0;
    for (double v : contingency.data()) index += comb2(v);
    double sum_a = 0.0, sum_b = 0.0;
    for (const auto& part : a.parts) sum_a += comb2(static_cast<double>(part.size()));
    for (const auto& part : b.parts) sum_b += comb2(static_cast<double>(part.size()));

    const double total_pairs = comb2(static_cast<double>(d));
    const double expected = total_pairs > 0.0 ? sum_a * sum_b / total_pairs : 0.0;
    const double max_index = (sum_a + sum_b) / 2.0;
    if (max_index == expected) return 1.0; // both trivial partitions: identical structure
    return (index - expected) / (max_index - expected);
}

std::string run_mode_name(RunMode m) {
    switch (m) {
    case RunMode::Classic: return "classic";
    case RunMode::Paradise: return "paradise";
    case RunMode::Ideal: return "ideal";
    }
    return "?";
}

RunMode run_mode_from_string(const std::string& s) {
    if (s == "classic") return RunMode::Classic;
    if (s == "paradise") return RunMode::Paradise;
    if (s == "ideal") return RunMode::Ideal;
    throw std::invalid_argument("unknown mode '" + s + "'");
}

namespace {

BenchmarkRow make_row(const std::string& dataset, const DetectorConfig& det, RunMode mode,
                      const ScoreBundle& bundle, const LabelVector& labels,
                      const Partition& partition, const Partition& truth,
                      const std::string& source) {
    BenchmarkRow row;
    row.dataset = dataset;
    row.detector = detector_kind_name(det.kind);
    row.mode = run_mode_name(mode);
    row.roc_auc = auc(roc_curve(bundle.global, labels));
    const F1Result f1 = best_f1(bundle.global, labels);
    row.f1 = f1.f1;
    row.precision = f1.precision;
    row.recall = f1.recall;
    row.ari = adjusted_rand_index(partition, truth);
    row.parts = partition.size();
    row.partition_source = source;
    return row;
}

} // namespace

std::vector<BenchmarkRow> benchmark(const BenchmarkConfig& config,
                                    const std::function<void(const BenchmarkRow&)>& sink) {
    std::vector<BenchmarkRow> rows;
    const bool wants_paradise =
        std::find(config.modes.begin(), config.modes.end(), RunMode::Paradise) != config.modes.end();

    for (const auto& entry : config.datasets) {
        const SyntheticDataset ds = generate(entry.spec);
        const Partition truth = ds.ground_truth.canonical();

        std::vector<PartitionCandidate> candidates;
        if (wants_paradise) {
            CorrelationConfig corr = config.correlation;
            corr.seed = derive_seed(entry.spec.seed, "correlate");
            corr.threads = config.threads;
            PartitionerConfig part_cfg = config.partitioner;
            part_cfg.seed = derive_seed(entry.spec.seed, "partition");
            candidates = partition_candidates(combined_matrix(ds.series, corr), part_cfg);
        }

        for (const auto& det : config.detectors) {
            for (const RunMode mode : config.modes) {
                BenchmarkRow row;
                switch (mode) {
                case RunMode::Classic: {
                    const auto bundle = run_classic(ds.series, config.window, det, config.threads);
                    row = make_row(entry.id, det, mode, bundle, ds.labels,
                                   single_part_partition(ds.series.d()), truth, "single");
                    break;
                }
                case RunMode::Ideal: {
                    const auto bundle =
                        run_paradise(ds.series, truth, config.window, det, config.threads);
                    row = make_row(entry.id, det, mode, bundle, ds.labels, truth, "ground-truth");
                    break;
                }
                case RunMode::Paradise: {
                    // Paper protocol: keep the clustering candidate with the
                    // best final ROC-AUC (needs labels; benchmark-only).
                    double best_auc = -1.0;
                    ScoreBundle best_bundle;
                    const PartitionCandidate* best_cand = nullptr;
                    for (const auto& cand : candidates) {
                        const auto bundle =
                            run_paradise(ds.series, cand.partition, config.window, det, config.threads);
                        const double a = auc(roc_curve(bundle.global, ds.labels));
                        if (a > best_auc) {
                            best_auc = a;
                            best_bundle = bundle;
                            best_cand = &cand;
                        }
                    }
                    row = make_row(entry.id, det, mode, best_bundle, ds.labels,
                                   best_cand->partition, truth, best_cand->source);
                    break;
                }
                }
                if (sink) sink(row);
                rows.push_back(std::move(row));
            }
        }
    }
    return rows;
}

std::vector<BenchmarkSummary> summarize(const std::vector<BenchmarkRow>& rows) {
    std::vector<BenchmarkSummary> out;
    for (const auto& row : rows) {
        auto it = std::find_if(out.begin(), out.end(), [&](const BenchmarkSummary& s) {
            return s.detector == row.detector && s.mode == row.mode;
        });
        if (it == out.end()) {
            out.push_back({row.detector, row.mode, 0, 0, 0, 0, 0, 0});
            it = out.end() - 1;
        }
        it->f1 += row.f1;
        it->precision += row.precision;
        it->recall += row.recall;
        it->roc_auc += row.roc_auc;
        it->ari += row.ari;
        it->count += 1;
    }
    for (auto& s : out) {
        const double c = static_cast<double>(s.count);
        s.f1 /= c;
        s.precision /= c;
        s.recall /= c;
        s.roc_auc /= c;
        s.ari /= c;
    }
    return out;
}

std::string format_summary_table(const std::vector<BenchmarkSummary>& summary) {
    std::ostringstream os;
    os << "detector   mode       F1     Pr     Ra     ROC    ARI    n\n";
    char line[160];
    for (const auto& s : summary) {
        std::snprintf(line, sizeof(line), "%-10s %-9s %6.3f %6.3f %6.3f %6.3f %6.3f %zu\n",
                      s.detector.c_str(), s.mode.c_str(), s.f1, s.precision, s.recall, s.roc_auc,
                      s.ari, s.count);
        os << line;
    }
    return os.str();
}

} // namespace paradise
