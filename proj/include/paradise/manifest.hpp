#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

namespace paradise {

inline constexpr const char* kToolVersion = "0.1.0";

std::string sha256_hex(std::string_view bytes);
std::string sha256_file(const std::filesystem::path& path);

/// Reproducibility manifest: tool version, subcommand, the full effective
/// configuration (defaults included), the global seed and digests of every
/// input file. Two runs with equal manifest inputs produce equal outputs.
nlohmann::json run_manifest(const std::string& command, const nlohmann::json& config,
                            std::uint64_t seed,
                            const std::vector<std::filesystem::path>& input_files);

} // namespace paradise
