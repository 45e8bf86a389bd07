#include "paradise/config_json.hpp"

#include <cmath>
#include <set>

#include "paradise/rng.hpp"

namespace paradise {

namespace {

void check_keys(const nlohmann::json& j, const std::set<std::string>& allowed,
                const std::string& where) {
    if (!j.is_object()) throw DataError(where + ": expected a JSON object");
    for (const auto& [key, value] : j.items()) {
        (void)value;
        if (!allowed.count(key)) throw DataError(where + ": unknown key '" + key + "'");
    }
}

TrackingMode tracking_mode_from_string(const std::string& s) {
    if (s == "linear") return TrackingMode::Linear;
    if (s == "exponential") return TrackingMode::Exponential;
    if (s == "logarithmic") return TrackingMode::Logarithmic;
    throw DataError("unknown tracking mode '" + s + "'");
}

std::string tracking_mode_name(TrackingMode m) {
    switch (m) {
    case TrackingMode::Linear: return "linear";
    case TrackingMode::Exponential: return "exponential";
    case TrackingMode::Logarithmic: return "logarithmic";
    }
    return "?";
}

} // namespace

GeneratorSpec generator_spec_from_json(const nlohmann::json& j) {
    check_keys(j, {"n", "seed", "contamination", "noise_sigma_scale", "frequency_factor",
                   "subsets", "random"},
               "generator spec");
    if (j.contains("random")) {
        const auto& r = j["random"];
        check_keys(r, {"n", "num_subsets", "min_trackers", "max_trackers", "contamination",
                       "noise_sigma_scale", "frequency_factor"},
                   "generator spec random block");
        RandomSpecParams params;
        params.n = r.value("n", params.n);
        params.num_subsets = r.value("num_subsets", params.num_subsets);
        params.min_trackers = r.value("min_trackers", params.min_trackers);
        params.max_trackers = r.value("max_trackers", params.max_trackers);
        params.contamination = r.value("contamination", params.contamination);
        params.noise_sigma_scale = r.value("noise_sigma_scale", params.noise_sigma_scale);
        params.frequency_factor = r.value("frequency_factor", params.frequency_factor);
        return make_random_spec(params, j.value("seed", std::uint64_t{0}));
    }

    GeneratorSpec spec;
    spec.n = j.value("n", spec.n);
    spec.seed = j.value("seed", spec.seed);
    spec.contamination = j.value("contamination", spec.contamination);
    spec.noise_sigma_scale = j.value("noise_sigma_scale", spec.noise_sigma_scale);
    spec.frequency_factor = j.value("frequency_factor", spec.frequency_factor);
    if (!j.contains("subsets")) throw DataError("generator spec: missing 'subsets'");
    for (const auto& js : j["subsets"]) {
        check_keys(js, {"support", "trackers"}, "subset");
        SubsetSpec sub;
        const auto& jsup = js.at("support");
        check_keys(jsup, {"terms"}, "support");
        for (const auto& jt : jsup.at("terms")) {
            check_keys(jt, {"amplitude", "frequency", "phase", "variable_frequency"}, "support term");
            SupportTerm term;
            term.amplitude = jt.at("amplitude").get<double>();
            term.frequency = jt.at("frequency").get<double>();
            if (jt.contains("phase")) term.phase = jt["phase"].get<double>();
            term.variable_frequency = jt.value("variable_frequency", false);
            sub.support.terms.push_back(term);
        }
        if (js.contains("trackers")) {
            for (const auto& jt : js["trackers"]) {
                check_keys(jt, {"mode", "step", "u0", "support_index"}, "tracker");
                TrackingSpec trk;
                trk.mode = tracking_mode_from_string(jt.value("mode", std::string("linear")));
                trk.step = jt.at("step").get<double>();
                if (jt.contains("u0")) trk.u0 = jt["u0"].get<double>();
                trk.support_index = jt.value("support_index", std::size_t{0});
                sub.trackers.push_back(trk);
            }
        }
        spec.subsets.push_back(std::move(sub));
    }
    return spec;
}

nlohmann::json generator_spec_to_json(const GeneratorSpec& spec) {
    nlohmann::json j;
    j["n"] = spec.n;
    j["seed"] = spec.seed;
    j["contamination"] = spec.contamination;
    j["noise_sigma_scale"] = spec.noise_sigma_scale;
    j["frequency_factor"] = spec.frequency_factor;
    j["subsets"] = nlohmann::json::array();
    for (const auto& sub : spec.subsets) {
        nlohmann::json js;
        js["support"]["terms"] = nlohmann::json::array();
        for (const auto& term : sub.support.terms) {
            nlohmann::json jt;
            jt["amplitude"] = term.amplitude;
            jt["frequency"] = term.frequency;
            if (!std::isnan(term.phase)) jt["phase"] = term.phase;
            jt["variable_frequency"] = term.variable_frequency;
            js["support"]["terms"].push_back(jt);
        }
        js["trackers"] = nlohmann::json::array();
        for (const auto& trk : sub.trackers) {
            nlohmann::json jt;
            jt["mode"] = tracking_mode_name(trk.mode);
            jt["step"] = trk.step;
            if (!std::isnan(trk.u0)) jt["u0"] = trk.u0;
            jt["support_index"] = trk.support_index;
            js["trackers"].push_back(jt);
        }
        j["subsets"].push_back(js);
    }
    return j;
}

WindowConfig window_config_from_json(const nlohmann::json& j) {
    check_keys(j, {"window", "assignment"}, "window config");
    WindowConfig c;
    c.window = j.value("window", c.window);
    const std::string assignment = j.value("assignment", std::string("last-point"));
    if (assignment == "last-point") c.assignment = WindowAssignment::LastPoint;
    else if (assignment == "center") c.assignment = WindowAssignment::Center;
    else throw DataError("unknown window assignment '" + assignment + "'");
    return c;
}

nlohmann::json window_config_to_json(const WindowConfig& c) {
    return {{"window", c.window},
            {"assignment", c.assignment == WindowAssignment::LastPoint ? "last-point" : "center"}};
}

DetectorConfig detector_config_from_json(const nlohmann::json& j) {
    check_keys(j, {"kind", "trees", "subsample", "neighbors", "centroids", "seed"}, "detector");
    DetectorConfig c;
    c.kind = detector_kind_from_string(j.value("kind", std::string("iforest")));
    c.trees = j.value("trees", c.trees);
    c.subsample = j.value("subsample", c.subsample);
    c.neighbors = j.value("neighbors", c.neighbors);
    c.centroids = j.value("centroids", c.centroids);
    c.seed = j.value("seed", c.seed);
    return c;
}

nlohmann::json detector_config_to_json(const DetectorConfig& c) {
    return {{"kind", detector_kind_name(c.kind)}, {"trees", c.trees},
            {"subsample", c.subsample},          {"neighbors", c.neighbors},
            {"centroids", c.centroids},          {"seed", c.seed}};
}

PartitionerConfig partitioner_config_from_json(const nlohmann::json& j) {
    check_keys(j, {"backend", "k_min", "k_max", "min_cluster_size", "selection", "seed"},
               "partitioner config");
    PartitionerConfig c;
    const std::string backend = j.value("backend", std::string("kmeans-sweep"));
    if (backend == "kmeans-sweep") c.backend = PartitionBackend::KMeansSweep;
    else if (backend == "density") c.backend = PartitionBackend::Density;
    else throw DataError("unknown partition backend '" + backend + "'");
    c.k_min = j.value("k_min", c.k_min);
    c.k_max = j.value("k_max", c.k_max);
    c.min_cluster_size = j.value("min_cluster_size", c.min_cluster_size);
    const std::string selection = j.value("selection", std::string("silhouette"));
    if (selection == "silhouette") c.selection = PartitionSelection::Silhouette;
    else if (selection == "supervised-roc") c.selection = PartitionSelection::SupervisedRoc;
    else throw DataError("unknown selection '" + selection + "'");
    c.seed = j.value("seed", c.seed);
    return c;
}

nlohmann::json partitioner_config_to_json(const PartitionerConfig& c) {
    return {{"backend", c.backend == PartitionBackend::KMeansSweep ? "kmeans-sweep" : "density"},
            {"k_min", c.k_min},
            {"k_max", c.k_max},
            {"min_cluster_size", c.min_cluster_size},
            {"selection",
             c.selection == PartitionSelection::Silhouette ? "silhouette" : "supervised-roc"},
            {"seed", c.seed}};
}

CorrelationConfig correlation_config_from_json(const nlohmann::json& j) {
    check_keys(j, {"heavy_subsample_cap", "seed"}, "correlation config");
    CorrelationConfig c;
    c.heavy_subsample_cap = j.value("heavy_subsample_cap", c.heavy_subsample_cap);
    c.seed = j.value("seed", c.seed);
    return c;
}

nlohmann::json correlation_config_to_json(const CorrelationConfig& c) {
    return {{"heavy_subsample_cap", c.heavy_subsample_cap}, {"seed", c.seed}};
}

BenchmarkConfig benchmark_config_from_json(const nlohmann::json& j, std::uint64_t default_seed) {
    check_keys(j, {"datasets", "detectors", "modes", "window", "partitioner", "correlation"},
               "benchmark config");
    BenchmarkConfig c;
    if (!j.contains("datasets") || !j["datasets"].is_array() || j["datasets"].empty())
        throw DataError("benchmark config: 'datasets' must be a non-empty array");
    std::size_t auto_id = 0;
    for (const auto& jd : j["datasets"]) {
        BenchmarkDataset ds;
        nlohmann::json spec_json = jd;
        if (jd.contains("id")) {
            ds.id = jd["id"].get<std::string>();
            spec_json.erase("id");
        } else {
            ds.id = "dataset_" + std::to_string(++auto_id);
        }
        if (!spec_json.contains("seed"))
            spec_json["seed"] = derive_seed(default_seed, "benchmark-dataset", auto_id);
        ds.spec = generator_spec_from_json(spec_json);
        c.datasets.push_back(std::move(ds));
    }
    if (j.contains("detectors")) {
        for (const auto& jd : j["detectors"]) c.detectors.push_back(detector_config_from_json(jd));
    }
    if (c.detectors.empty()) throw DataError("benchmark config: no detectors");
    if (j.contains("modes")) {
        c.modes.clear();
        for (const auto& jm : j["modes"]) c.modes.push_back(run_mode_from_string(jm.get<std::string>()));
    }
    if (j.contains("window")) c.window = window_config_from_json(j["window"]);
    if (j.contains("partitioner")) c.partitioner = partitioner_config_from_json(j["partitioner"]);
    if (j.contains("correlation")) c.correlation = correlation_config_from_json(j["correlation"]);
    return c;
}

nlohmann::json benchmark_config_to_json(const BenchmarkConfig& c) {
    nlohmann::json j;
    j["datasets"] = nlohmann::json::array();
    for (const auto& ds : c.datasets) {
        nlohmann::json jd = generator_spec_to_json(ds.spec);
        jd["id"] = ds.id;
        j["datasets"].push_back(jd);
    }
    j["detectors"] = nlohmann::json::array();
    for (const auto& det : c.detectors) j["detectors"].push_back(detector_config_to_json(det));
    j["modes"] = nlohmann::json::array();
    for (const RunMode m : c.modes) j["modes"].push_back(run_mode_name(m));
    j["window"] = window_config_to_json(c.window);
    j["partitioner"] = partitioner_config_to_json(c.partitioner);
    j["correlation"] = correlation_config_to_json(c.correlation);
    return j;
}

} // namespace paradise
