#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace paradise {

/// splitmix64 mixing step; good avalanche, used to derive stream seeds.
inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e9b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

inline std::uint64_t fnv1a(std::string_view s) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

/// Seed-splitting scheme: every module draws its seed from the global seed
/// plus a role tag and an index, so parallel work is schedule-independent.
inline std::uint64_t derive_seed(std::uint64_t seed, std::string_view role, std::uint64_t index = 0) {
    return splitmix64(splitmix64(seed ^ fnv1a(role)) ^ index);
}

inline std::mt19937_64 make_engine(std::uint64_t seed, std::string_view role, std::uint64_t index = 0) {
    return std::mt19937_64(derive_seed(seed, role, index));
}

} // namespace paradise
