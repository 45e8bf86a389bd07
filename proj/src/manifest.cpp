#include "paradise/manifest.hpp"

#include <openssl/evp.h>

#include "paradise/io.hpp"

namespace paradise {

std::string sha256_hex(std::string_view bytes) {
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    EVP_Digest(bytes.data(), bytes.size(), digest, &len, EVP_sha256(), nullptr);
    static const char* hex = "0123456789abcdef";
    std::string out;
    out.reserve(2 * len);
    for (unsigned int i = 0; i < len; ++i) {
        out += hex[digest[i] >> 4];
        out += hex[digest[i] & 0xf];
    }
    return out;
}

std::string sha256_file(const std::filesystem::path& path) {
    return sha256_hex(read_text_file(path));
}

nlohmann::json run_manifest(const std::string& command, const nlohmann::json& config,
                            std::uint64_t seed,
                            const std::vector<std::filesystem::path>& input_files) {
    nlohmann::json manifest;
    manifest["tool"] = "paradise";
    manifest["version"] = kToolVersion;
    manifest["command"] = command;
    manifest["seed"] = seed;
    manifest["config"] = config;
    nlohmann::json inputs = nlohmann::json::object();
    for (const auto& f : input_files) inputs[f.string()] = sha256_file(f);
    manifest["inputs"] = inputs;
    return manifest;
}

} // namespace paradise
