#pragma once

#include <json.hpp>

#include "paradise/correlation.hpp"
#include "paradise/detectors.hpp"
#include "paradise/evaluation.hpp"
#include "paradise/generator.hpp"
#include "paradise/partitioner.hpp"

namespace paradise {

/// JSON bindings for the documented config schemas. Parsers reject unknown
/// keys so a typo never silently falls back to a default; serializers echo
/// every effective field for run manifests.

GeneratorSpec generator_spec_from_json(const nlohmann::json& j);
nlohmann::json generator_spec_to_json(const GeneratorSpec& spec);

WindowConfig window_config_from_json(const nlohmann::json& j);
nlohmann::json window_config_to_json(const WindowConfig& c);

DetectorConfig detector_config_from_json(const nlohmann::json& j);
nlohmann::json detector_config_to_json(const DetectorConfig& c);

PartitionerConfig partitioner_config_from_json(const nlohmann::json& j);
nlohmann::json partitioner_config_to_json(const PartitionerConfig& c);

CorrelationConfig correlation_config_from_json(const nlohmann::json& j);
nlohmann::json correlation_config_to_json(const CorrelationConfig& c);

/// Benchmark grid file: datasets (inline specs or random-spec shorthands),
/// detectors, modes, and the shared window/partitioner/correlation blocks.
BenchmarkConfig benchmark_config_from_json(const nlohmann::json& j, std::uint64_t default_seed);
nlohmann::json benchmark_config_to_json(const BenchmarkConfig& c);

} // namespace paradise
