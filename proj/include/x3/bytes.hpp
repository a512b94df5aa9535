#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace x3 {

using ByteSpan = std::span<const std::uint8_t>;
using Bytes = std::vector<std::uint8_t>;

inline constexpr std::uint64_t kFnvOffsetBasis = 14695981039346656037ull;
inline constexpr std::uint64_t kFnvPrime = 1099511628211ull;

//! FNV-1a over a byte span, chainable through the seed parameter.
inline std::uint64_t fnv1a(ByteSpan data, std::uint64_t seed = kFnvOffsetBasis) {
    std::uint64_t h = seed;
    for (std::uint8_t b : data) {
        h ^= b;
        h *= kFnvPrime;
    }
    return h;
}

//! Mix one 64-bit word into a running FNV-1a hash.
inline std::uint64_t fnv1a_word(std::uint64_t value, std::uint64_t seed) {
    std::uint64_t h = seed;
    for (int i = 0; i < 8; ++i) {
        h ^= (value >> (8 * i)) & 0xFF;
        h *= kFnvPrime;
    }
    return h;
}

}  // namespace x3
