// paradise: partition-based anomaly detection for multivariate time series.
//
// Subcommands: generate, correlate, partition, detect, run, evaluate,
// benchmark. Every run is reproducible from (inputs, flags, --seed); the
// --threads flag only distributes work and never changes results, so it is
// not part of the manifest.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "paradise/config_json.hpp"
#include "paradise/correlation.hpp"
#include "paradise/dataset.hpp"
#include "paradise/detectors.hpp"
#include "paradise/evaluation.hpp"
#include "paradise/generator.hpp"
#include "paradise/io.hpp"
#include "paradise/manifest.hpp"
#include "paradise/partitioner.hpp"
#include "paradise/pipeline.hpp"
#include "paradise/rng.hpp"
#include "paradise/types.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitData = 2;
constexpr int kExitInternal = 3;

struct CommonOpts {
    std::uint64_t seed = 42;
    int threads = 1;
};

struct InputOpts {
    std::string input;
    std::string format = "plain-csv";
    std::string labels;
    bool skip_first_column = false;
    bool interpolate = false;

    paradise::CsvOptions csv() const {
        paradise::CsvOptions opts;
        opts.skip_first_column = skip_first_column;
        opts.nan_policy =
            interpolate ? paradise::NanPolicy::Interpolate : paradise::NanPolicy::Reject;
        return opts;
    }

    paradise::Dataset load() const {
        std::optional<fs::path> labels_path;
        if (!labels.empty()) labels_path = labels;
        return paradise::load_dataset(input, paradise::dataset_format_from_string(format), csv(),
                                      labels_path);
    }

    json echo() const {
        return {{"input", input},
                {"format", format},
                {"labels", labels},
                {"skip_first_column", skip_first_column},
                {"interpolate", interpolate}};
    }
};

void add_common(CLI::App* cmd, CommonOpts& opts) {
    cmd->add_option("--seed", opts.seed, "Global seed; every stage derives its own stream");
    cmd->add_option("--threads", opts.threads, "Worker cap; never changes results")
        ->check(CLI::PositiveNumber);
}

void add_input(CLI::App* cmd, InputOpts& opts, bool require = true) {
    auto* o = cmd->add_option("--input", opts.input, "Input series (CSV file or dataset directory)");
    if (require) o->required();
    cmd->add_option("--format", opts.format, "plain-csv | smd | wadi | swat")
        ->check(CLI::IsMember({"plain-csv", "csv", "smd", "wadi", "swat"}));
    cmd->add_option("--labels", opts.labels, "Labels CSV (plain-csv format only)");
    cmd->add_flag("--skip-first-column", opts.skip_first_column,
                  "Ignore a leading timestamp column");
    cmd->add_flag("--interpolate", opts.interpolate,
                  "Fill NaN gaps by linear interpolation instead of rejecting");
}

struct PartitionOpts {
    std::string backend = "kmeans-sweep";
    std::string k_range = "2:20";
    std::size_t min_cluster_size = 2;
    std::string selection = "silhouette";

    paradise::PartitionerConfig config(std::uint64_t seed) const {
        paradise::PartitionerConfig cfg;
        cfg.backend = backend == "density" ? paradise::PartitionBackend::Density
                                           : paradise::PartitionBackend::KMeansSweep;
        const auto colon = k_range.find(':');
        if (colon == std::string::npos)
            throw CLI::ValidationError("--k-range", "expected lo:hi, e.g. 2:20");
        try {
            cfg.k_min = std::stoul(k_range.substr(0, colon));
            cfg.k_max = std::stoul(k_range.substr(colon + 1));
        } catch (const std::exception&) {
            throw CLI::ValidationError("--k-range", "expected lo:hi, e.g. 2:20");
        }
        cfg.min_cluster_size = min_cluster_size;
        cfg.selection = selection == "supervised-roc" ? paradise::PartitionSelection::SupervisedRoc
                                                      : paradise::PartitionSelection::Silhouette;
        cfg.seed = seed;
        return cfg;
    }
};

void add_partition_opts(CLI::App* cmd, PartitionOpts& opts) {
    cmd->add_option("--backend", opts.backend, "kmeans-sweep | density")
        ->check(CLI::IsMember({"kmeans-sweep", "density"}));
    cmd->add_option("--k-range", opts.k_range, "Inclusive k sweep range, lo:hi");
    cmd->add_option("--min-cluster-size", opts.min_cluster_size, "Density backend minimum size");
    cmd->add_option("--selection", opts.selection,
                    "silhouette | supervised-roc (supervised-roc is benchmark-only)")
        ->check(CLI::IsMember({"silhouette", "supervised-roc"}));
}

struct DetectorOpts {
    std::string detector = "iforest";
    std::size_t window = 1;
    std::string assignment = "last-point";
    std::size_t trees = 100;
    std::size_t subsample = 256;
    std::size_t neighbors = 20;
    std::size_t centroids = 10;
    std::string external_dir;

    paradise::WindowConfig window_config() const {
        paradise::WindowConfig wc;
        wc.window = window;
        wc.assignment = assignment == "center" ? paradise::WindowAssignment::Center
                                               : paradise::WindowAssignment::LastPoint;
        return wc;
    }

    paradise::DetectorConfig detector_config(std::uint64_t seed) const {
        paradise::DetectorConfig dc;
        dc.kind = paradise::detector_kind_from_string(detector);
        dc.trees = trees;
        dc.subsample = subsample;
        dc.neighbors = neighbors;
        dc.centroids = centroids;
        dc.seed = seed;
        return dc;
    }
};

void add_detector_opts(CLI::App* cmd, DetectorOpts& opts) {
    cmd->add_option("--detector", opts.detector, "iforest | lof | kmeans | external")
        ->check(CLI::IsMember({"iforest", "lof", "kmeans", "external"}));
    cmd->add_option("--window", opts.window, "Observations per window (stride 1)")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--assignment", opts.assignment, "last-point | center")
        ->check(CLI::IsMember({"last-point", "center"}));
    cmd->add_option("--trees", opts.trees, "iforest tree count");
    cmd->add_option("--subsample", opts.subsample, "iforest subsample size");
    cmd->add_option("--neighbors", opts.neighbors, "lof neighbor count");
    cmd->add_option("--centroids", opts.centroids, "kmeans detector centroid count");
    cmd->add_option("--external-dir", opts.external_dir,
                    "Directory with part_<k>.csv score files (detector=external)");
}

void write_manifest(const fs::path& out_dir, const std::string& command, const json& config,
                    std::uint64_t seed, const std::vector<fs::path>& inputs) {
    const json manifest = paradise::run_manifest(command, config, seed, inputs);
    paradise::write_text_file(out_dir / "manifest.json", manifest.dump(2) + "\n");
}

json metrics_json(const std::vector<double>& scores, const paradise::LabelVector& labels) {
    const auto curve = paradise::roc_curve(scores, labels);
    const auto f1 = paradise::best_f1(scores, labels);
    return {{"roc_auc", paradise::auc(curve)},
            {"f1", f1.f1},
            {"precision", f1.precision},
            {"recall", f1.recall},
            {"threshold", f1.threshold},
            {"n", labels.size()},
            {"positives", labels.positives()},
            {"contamination", labels.contamination()}};
}

// ---------------------------------------------------------------------------

int cmd_generate(const std::string& config_path, const std::string& out_dir_s,
                 const CommonOpts& common, bool seed_given) {
    json config = json::parse(paradise::read_text_file(config_path));
    if (seed_given) config["seed"] = common.seed; // explicit flag wins over file
    const paradise::GeneratorSpec spec = paradise::generator_spec_from_json(config);
    const paradise::SyntheticDataset ds = paradise::generate(spec);

    const fs::path out_dir(out_dir_s);
    fs::create_directories(out_dir);
    paradise::write_series_csv(out_dir / "series.csv", ds.series);
    paradise::write_labels_csv(out_dir / "labels.csv", ds.labels);
    paradise::write_partition_json(out_dir / "ground_truth.json", ds.ground_truth, ds.series.names);

    json anomalies = json::array();
    for (const auto& a : ds.injected) {
        anomalies.push_back({{"kind", paradise::anomaly_kind_name(a.kind)},
                             {"variable", ds.series.names[a.target]},
                             {"start", a.start},
                             {"end", a.end},
                             {"magnitude", a.magnitude}});
    }
    paradise::write_text_file(out_dir / "anomalies.json", anomalies.dump(2) + "\n");

    json echo = paradise::generator_spec_to_json(spec);
    write_manifest(out_dir, "generate", echo, spec.seed, {config_path});
    std::printf("generated %zu x %zu series, %zu parts, contamination %.4f -> %s\n",
                ds.series.n(), ds.series.d(), ds.ground_truth.size(),
                ds.labels.contamination(), out_dir.string().c_str());
    return kExitOk;
}

int cmd_correlate(const InputOpts& input, const std::string& out, const std::string& methods_out,
                  std::size_t cap, const CommonOpts& common) {
    const paradise::Dataset ds = input.load();
    const paradise::TimeSeries& series = ds.train ? *ds.train : ds.series;

    paradise::CorrelationConfig cfg;
    cfg.heavy_subsample_cap = cap;
    cfg.seed = paradise::derive_seed(common.seed, "correlate");
    cfg.threads = common.threads;
    const paradise::CorrelationMatrix matrix = paradise::combined_matrix(series, cfg);

    paradise::write_named_matrix_csv(out, series.names, matrix.values);
    if (!methods_out.empty()) {
        std::vector<std::vector<std::string>> tags(matrix.d());
        for (std::size_t i = 0; i < matrix.d(); ++i)
            for (std::size_t j = 0; j < matrix.d(); ++j)
                tags[i].push_back(paradise::coefficient_name(matrix.method_argmax[i][j]));
        paradise::write_named_tag_matrix_csv(methods_out, series.names, tags);
    }

    json config = {{"command", "correlate"},
                   {"heavy_subsample_cap", cap},
                   {"inputs", input.echo()},
                   {"out", out}};
    const fs::path out_dir = fs::path(out).parent_path();
    write_manifest(out_dir.empty() ? "." : out_dir, "correlate", config, common.seed,
                   {fs::path(input.input)});
    return kExitOk;
}

int cmd_partition(const std::string& matrix_path, const InputOpts& input, const std::string& out,
                  const PartitionOpts& popts, std::size_t cap, const CommonOpts& common) {
    std::vector<std::string> names;
    paradise::CorrelationMatrix matrix;
    std::vector<fs::path> manifest_inputs;

    if (!matrix_path.empty()) {
        auto [names_in, values] = paradise::read_named_matrix_csv(matrix_path);
        names = std::move(names_in);
        matrix.values = std::move(values);
        matrix.method_argmax.assign(names.size(),
                                    std::vector<paradise::Coefficient>(names.size(),
                                                                       paradise::Coefficient::None));
        manifest_inputs.push_back(matrix_path);
    } else {
        if (input.input.empty())
            throw CLI::ValidationError("partition", "need --matrix or --input");
        const paradise::Dataset ds = input.load();
        const paradise::TimeSeries& series = ds.train ? *ds.train : ds.series;
        names = series.names;
        paradise::CorrelationConfig cfg;
        cfg.heavy_subsample_cap = cap;
        cfg.seed = paradise::derive_seed(common.seed, "correlate");
        cfg.threads = common.threads;
        matrix = paradise::combined_matrix(series, cfg);
        manifest_inputs.push_back(input.input);
    }

    const auto cfg = popts.config(paradise::derive_seed(common.seed, "partition"));
    const paradise::Partition partition = paradise::partition_variables(matrix, cfg);
    paradise::write_partition_json(out, partition, names);

    json config = {{"command", "partition"},
                   {"partitioner", paradise::partitioner_config_to_json(cfg)},
                   {"matrix", matrix_path},
                   {"out", out}};
    const fs::path out_dir = fs::path(out).parent_path();
    write_manifest(out_dir.empty() ? "." : out_dir, "partition", config, common.seed,
                   manifest_inputs);
    std::printf("partitioned %zu variables into %zu parts -> %s\n", names.size(),
                partition.size(), out.c_str());
    return kExitOk;
}

paradise::ScoreBundle external_bundle(const fs::path& dir, std::size_t parts, std::size_t n) {
    std::vector<std::vector<double>> local(parts);
    for (std::size_t k = 0; k < parts; ++k) {
        const fs::path f = dir / ("part_" + std::to_string(k + 1) + ".csv");
        local[k] = paradise::read_score_column(f);
        if (local[k].size() != n)
            throw paradise::DataError(f.string() + ": expected " + std::to_string(n) +
                                      " scores, got " + std::to_string(local[k].size()));
    }
    return paradise::bundle_from_local_scores(std::move(local));
}

int cmd_detect(const InputOpts& input, const std::string& partition_path,
               const DetectorOpts& dopts, const std::string& out, const CommonOpts& common) {
    const paradise::Dataset ds = input.load();
    paradise::Partition partition = partition_path.empty()
                                        ? paradise::single_part_partition(ds.series.d())
                                        : paradise::read_partition_json(partition_path,
                                                                        ds.series.names);

    paradise::ScoreBundle bundle;
    if (dopts.detector == "external") {
        if (dopts.external_dir.empty())
            throw CLI::ValidationError("--external-dir", "required for --detector external");
        bundle = external_bundle(dopts.external_dir, partition.size(), ds.series.n());
    } else {
        const auto wc = dopts.window_config();
        const auto dc = dopts.detector_config(paradise::derive_seed(common.seed, "detect"));
        bundle = ds.train
                     ? paradise::run_paradise_split(*ds.train, ds.series, partition, wc, dc,
                                                    common.threads)
                     : paradise::run_paradise(ds.series, partition, wc, dc, common.threads);
    }
    paradise::write_scores_csv(out, bundle);

    json config = {{"command", "detect"},
                   {"inputs", input.echo()},
                   {"partition", partition_path},
                   {"window", paradise::window_config_to_json(dopts.window_config())},
                   {"detector", paradise::detector_config_to_json(
                                    dopts.detector_config(paradise::derive_seed(common.seed, "detect")))},
                   {"out", out}};
    std::vector<fs::path> inputs{fs::path(input.input)};
    if (!partition_path.empty()) inputs.push_back(partition_path);
    const fs::path out_dir = fs::path(out).parent_path();
    write_manifest(out_dir.empty() ? "." : out_dir, "detect", config, common.seed, inputs);
    return kExitOk;
}

int cmd_evaluate(const std::string& scores_path, const std::string& labels_path,
                 const std::string& out) {
    const paradise::ScoreBundle bundle = paradise::read_scores_csv(scores_path);
    const paradise::LabelVector labels = paradise::read_labels_csv(labels_path);
    if (labels.size() != bundle.n())
        throw paradise::DataError("labels length " + std::to_string(labels.size()) +
                                  " does not match scores length " + std::to_string(bundle.n()));
    const json metrics = metrics_json(bundle.global, labels);
    if (!out.empty()) paradise::write_text_file(out, metrics.dump(2) + "\n");
    std::printf("%s\n", metrics.dump(2).c_str());
    return kExitOk;
}

int cmd_run(const InputOpts& input, const std::string& out_dir_s, const std::string& mode,
            const std::string& partition_path, const PartitionOpts& popts,
            const DetectorOpts& dopts, std::size_t cap, const CommonOpts& common) {
    const paradise::Dataset ds = input.load();
    const paradise::TimeSeries& fit_series = ds.train ? *ds.train : ds.series;
    const fs::path out_dir(out_dir_s);
    fs::create_directories(out_dir);

    // Stage 1+2: partition (skipped for classic mode or an injected partition).
    paradise::Partition partition;
    if (mode == "classic") {
        partition = paradise::single_part_partition(ds.series.d());
    } else if (!partition_path.empty()) {
        partition = paradise::read_partition_json(partition_path, ds.series.names);
    } else {
        paradise::CorrelationConfig corr_cfg;
        corr_cfg.heavy_subsample_cap = cap;
        corr_cfg.seed = paradise::derive_seed(common.seed, "correlate");
        corr_cfg.threads = common.threads;
        const paradise::CorrelationMatrix matrix = paradise::combined_matrix(fit_series, corr_cfg);
        paradise::write_named_matrix_csv(out_dir / "matrix.csv", fit_series.names, matrix.values);
        std::vector<std::vector<std::string>> tags(matrix.d());
        for (std::size_t i = 0; i < matrix.d(); ++i)
            for (std::size_t j = 0; j < matrix.d(); ++j)
                tags[i].push_back(paradise::coefficient_name(matrix.method_argmax[i][j]));
        paradise::write_named_tag_matrix_csv(out_dir / "methods.csv", fit_series.names, tags);
        partition =
            paradise::partition_variables(matrix, popts.config(paradise::derive_seed(common.seed, "partition")));
    }
    paradise::write_partition_json(out_dir / "partition.json", partition, ds.series.names);

    // Stage 3+4: local detection and fusion.
    const auto wc = dopts.window_config();
    const auto dc = dopts.detector_config(paradise::derive_seed(common.seed, "detect"));
    paradise::ScoreBundle bundle;
    if (dopts.detector == "external") {
        if (dopts.external_dir.empty())
            throw CLI::ValidationError("--external-dir", "required for --detector external");
        bundle = external_bundle(dopts.external_dir, partition.size(), ds.series.n());
    } else {
        bundle = ds.train ? paradise::run_paradise_split(*ds.train, ds.series, partition, wc, dc,
                                                         common.threads)
                          : paradise::run_paradise(ds.series, partition, wc, dc, common.threads);
    }
    paradise::write_scores_csv(out_dir / "scores.csv", bundle);

    // Stage 5: evaluation when labels exist.
    if (ds.labels) {
        const json metrics = metrics_json(bundle.global, *ds.labels);
        paradise::write_text_file(out_dir / "metrics.json", metrics.dump(2) + "\n");
    }

    json config = {{"command", "run"},
                   {"inputs", input.echo()},
                   {"mode", mode},
                   {"partition_file", partition_path},
                   {"window", paradise::window_config_to_json(wc)},
                   {"detector", paradise::detector_config_to_json(dc)},
                   {"partitioner", paradise::partitioner_config_to_json(
                                       popts.config(paradise::derive_seed(common.seed, "partition")))},
                   {"correlation_cap", cap},
                   {"dataset", {{"n", ds.series.n()},
                                {"d", ds.series.d()},
                                {"parts", partition.size()},
                                {"contamination", ds.contamination()},
                                {"has_train_split", ds.train.has_value()}}}};
    std::vector<fs::path> inputs;
    if (fs::is_directory(input.input)) {
        for (const auto& entry : fs::directory_iterator(input.input))
            if (entry.is_regular_file()) inputs.push_back(entry.path());
        std::sort(inputs.begin(), inputs.end());
    } else {
        inputs.push_back(input.input);
        if (!input.labels.empty()) inputs.push_back(input.labels);
    }
    if (!partition_path.empty()) inputs.push_back(partition_path);
    write_manifest(out_dir, "run", config, common.seed, inputs);
    std::printf("run complete: %zu parts, %zu instants, contamination %.4f -> %s\n",
                partition.size(), ds.series.n(), ds.contamination(), out_dir.string().c_str());
    return kExitOk;
}

int cmd_benchmark(const std::string& config_path, const std::string& out,
                  const CommonOpts& common) {
    const json config = json::parse(paradise::read_text_file(config_path));
    paradise::BenchmarkConfig bench = paradise::benchmark_config_from_json(config, common.seed);
    bench.threads = common.threads;

    std::ofstream rows_out(out);
    if (!rows_out) throw paradise::DataError("cannot write " + out);
    rows_out << "dataset,detector,mode,f1,precision,recall,roc_auc,ari,parts,partition_source\n";
    rows_out.flush();
    const auto sink = [&rows_out](const paradise::BenchmarkRow& row) {
        rows_out << row.dataset << ',' << row.detector << ',' << row.mode << ','
                 << paradise::format_double(row.f1) << ',' << paradise::format_double(row.precision)
                 << ',' << paradise::format_double(row.recall) << ','
                 << paradise::format_double(row.roc_auc) << ',' << paradise::format_double(row.ari)
                 << ',' << row.parts << ',' << row.partition_source << "\n";
        rows_out.flush(); // partial results survive a failed grid cell
    };

    const auto rows = paradise::benchmark(bench, sink);
    const auto summary = paradise::summarize(rows);
    std::printf("%s", paradise::format_summary_table(summary).c_str());

    json echo = paradise::benchmark_config_to_json(bench);
    const fs::path out_dir = fs::path(out).parent_path();
    write_manifest(out_dir.empty() ? "." : out_dir, "benchmark", echo, common.seed, {config_path});
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"PARADISE: partition-based anomaly detection for multivariate time series"};
    app.require_subcommand(1);

    // generate
    auto* gen = app.add_subcommand("generate", "Generate a synthetic benchmark dataset");
    std::string gen_config, gen_out;
    CommonOpts gen_common;
    gen->add_option("--config", gen_config, "Generator spec JSON")->required();
    gen->add_option("--out-dir", gen_out, "Output directory")->required();
    add_common(gen, gen_common);

    // correlate
    auto* corr = app.add_subcommand("correlate", "Compute the combined dependence matrix");
    InputOpts corr_input;
    std::string corr_out = "matrix.csv", corr_methods;
    std::size_t corr_cap = 2000;
    CommonOpts corr_common;
    add_input(corr, corr_input);
    corr->add_option("--out", corr_out, "Matrix CSV output");
    corr->add_option("--methods-out", corr_methods, "Winning-coefficient CSV output");
    corr->add_option("--cap", corr_cap, "Subsample cap for distance correlation and xi");
    add_common(corr, corr_common);

    // partition
    auto* part = app.add_subcommand("partition", "Cluster variables into a partition");
    InputOpts part_input;
    std::string part_matrix, part_out = "partition.json";
    PartitionOpts part_popts;
    std::size_t part_cap = 2000;
    CommonOpts part_common;
    part->add_option("--matrix", part_matrix, "Precomputed matrix CSV (skips correlation)");
    add_input(part, part_input, /*require=*/false);
    part->add_option("--out", part_out, "Partition JSON output");
    add_partition_opts(part, part_popts);
    part->add_option("--cap", part_cap, "Subsample cap when recomputing the matrix");
    add_common(part, part_common);

    // detect
    auto* det = app.add_subcommand("detect", "Score a series against a partition");
    InputOpts det_input;
    std::string det_partition, det_out = "scores.csv";
    DetectorOpts det_dopts;
    CommonOpts det_common;
    add_input(det, det_input);
    det->add_option("--partition", det_partition, "Partition JSON (default: single part)");
    det->add_option("--out", det_out, "Scores CSV output");
    add_detector_opts(det, det_dopts);
    add_common(det, det_common);

    // run
    auto* run = app.add_subcommand("run", "End to end: correlate, partition, detect, evaluate");
    InputOpts run_input;
    std::string run_out = "out", run_mode = "paradise", run_partition;
    PartitionOpts run_popts;
    DetectorOpts run_dopts;
    std::size_t run_cap = 2000;
    CommonOpts run_common;
    add_input(run, run_input);
    run->add_option("--out-dir", run_out, "Output directory");
    run->add_option("--mode", run_mode, "paradise | classic")
        ->check(CLI::IsMember({"paradise", "classic"}));
    run->add_option("--partition", run_partition, "Use this partition instead of clustering");
    add_partition_opts(run, run_popts);
    add_detector_opts(run, run_dopts);
    run->add_option("--cap", run_cap, "Subsample cap for distance correlation and xi");
    add_common(run, run_common);

    // evaluate
    auto* eval = app.add_subcommand("evaluate", "Metrics from scores and labels");
    std::string eval_scores, eval_labels, eval_out;
    eval->add_option("--scores", eval_scores, "Scores CSV from detect/run")->required();
    eval->add_option("--labels", eval_labels, "Labels CSV")->required();
    eval->add_option("--out", eval_out, "Metrics JSON output");

    // benchmark
    auto* bench = app.add_subcommand("benchmark", "Grid of generated datasets x detectors x modes");
    std::string bench_config, bench_out = "results.csv";
    CommonOpts bench_common;
    bench->add_option("--config", bench_config, "Benchmark grid JSON")->required();
    bench->add_option("--out", bench_out, "Per-cell results CSV");
    add_common(bench, bench_common);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (gen->parsed())
            return cmd_generate(gen_config, gen_out, gen_common, gen->count("--seed") > 0);
        if (corr->parsed())
            return cmd_correlate(corr_input, corr_out, corr_methods, corr_cap, corr_common);
        if (part->parsed())
            return cmd_partition(part_matrix, part_input, part_out, part_popts, part_cap,
                                 part_common);
        if (det->parsed()) return cmd_detect(det_input, det_partition, det_dopts, det_out, det_common);
        if (eval->parsed()) return cmd_evaluate(eval_scores, eval_labels, eval_out);
        if (run->parsed())
            return cmd_run(run_input, run_out, run_mode, run_partition, run_popts, run_dopts,
                           run_cap, run_common);
        if (bench->parsed()) return cmd_benchmark(bench_config, bench_out, bench_common);
    } catch (const CLI::Error& e) {
        std::fprintf(stderr, "usage error: %s\n", e.what());
        return kExitUsage;
    } catch (const paradise::DataError& e) {
        std::fprintf(stderr, "data error: %s\n", e.what());
        return kExitData;
    } catch (const nlohmann::json::exception& e) {
        std::fprintf(stderr, "data error: %s\n", e.what());
        return kExitData;
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "usage error: %s\n", e.what());
        return kExitUsage;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "internal error: %s\n", e.what());
        return kExitInternal;
    }
    return kExitUsage;
}
