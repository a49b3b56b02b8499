#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace slmsrl1 {

/// Generator behind every random substream.
using Engine = std::mt19937_64;

constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

/// Stable 64-bit FNV-1a; used to key substreams by curve label.
constexpr std::uint64_t fnv1a(std::string_view text) noexcept {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (char c : text) {
        h ^= static_cast<unsigned char>(c);
        h *= 0x100000001b3ULL;
    }
    return h;
}

/// Seed of substream (root, key, index). Distinct triples give unrelated
/// seeds; the result depends on nothing else.
constexpr std::uint64_t substream_seed(std::uint64_t root, std::uint64_t key, std::uint64_t index) noexcept {
    return splitmix64(splitmix64(splitmix64(root) ^ key) + index);
}

inline Engine make_engine(std::uint64_t seed) { return Engine(seed); }

}  // namespace slmsrl1
