// AVX2 variants of the search kernels.  This translation unit is compiled
// with -mavx2 and must only be reached after a runtime CPU check.

#include <immintrin.h>

#include <array>
#include <cstdint>

#include "x3/kernels.hpp"

namespace x3::kernels {

namespace {

// kCompact[mask] is the lane permutation that packs the set bits of `mask`
// to the front of an 8 x u32 vector.
constexpr auto kCompact = [] {
    std::array<std::array<std::uint32_t, 8>, 256> table{};
    for (int mask = 0; mask < 256; ++mask) {
        int out = 0;
        for (int lane = 0; lane < 8; ++lane) {
            if (mask & (1 << lane)) {
                table[static_cast<std::size_t>(mask)][static_cast<std::size_t>(out++)] =
                    static_cast<std::uint32_t>(lane);
            }
        }
    }
    return table;
}();

std::size_t filter_positions_avx2(const std::uint8_t* base, std::size_t limit,
                                  std::uint32_t* positions, std::size_t n,
                                  std::uint8_t key) {
    // The gather reads four bytes at base + q, so the vector path only takes
    // positions with q + 4 <= limit; the tail near the end of the buffer is
    // handled by the scalar loop below.  Positions are ascending, so the
    // cutoff is a prefix length found by binary search.
    std::size_t safe = 0;
    if (limit >= 4) {
        const std::uint32_t qmax = static_cast<std::uint32_t>(limit - 4);
        std::size_t lo = 0;
        std::size_t hi = n;
        while (lo < hi) {
            const std::size_t mid = (lo + hi) / 2;
            if (positions[mid] > qmax) {
                hi = mid;
            } else {
                lo = mid + 1;
            }
        }
        safe = lo;
    }

    const __m256i vkey = _mm256_set1_epi32(key);
    const __m256i vlow = _mm256_set1_epi32(0xFF);
    std::size_t out = 0;
    std::size_t i = 0;
    for (; i + 8 <= safe; i += 8) {
        const __m256i idx =
            _mm256_loadu_si256(reinterpret_cast<const __m256i*>(positions + i));
        const __m256i gathered =
            _mm256_i32gather_epi32(reinterpret_cast<const int*>(base), idx, 1);
        const __m256i eq =
            _mm256_cmpeq_epi32(_mm256_and_si256(gathered, vlow), vkey);
        const auto mask =
            static_cast<unsigned>(_mm256_movemask_ps(_mm256_castsi256_ps(eq)));
        const __m256i perm = _mm256_loadu_si256(
            reinterpret_cast<const __m256i*>(kCompact[mask].data()));
        // out <= i at all times, so this store stays inside positions[0..n).
        _mm256_storeu_si256(reinterpret_cast<__m256i*>(positions + out),
                            _mm256_permutevar8x32_epi32(idx, perm));
        out += static_cast<unsigned>(__builtin_popcount(mask));
    }
    for (; i < n; ++i) {
        const std::uint32_t q = positions[i];
        positions[out] = q;
        out += base[q] == key;
    }
    return out;
}

std::size_t common_prefix_avx2(const std::uint8_t* a, const std::uint8_t* b,
                               std::size_t max_len) {
    std::size_t i = 0;
    for (; i + 32 <= max_len; i += 32) {
        const __m256i va = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(a + i));
        const __m256i vb = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(b + i));
        const auto mask =
            static_cast<unsigned>(_mm256_movemask_epi8(_mm256_cmpeq_epi8(va, vb)));
        if (mask != 0xFFFFFFFFu) {
            return i + static_cast<std::size_t>(__builtin_ctz(~mask));
        }
    }
    while (i < max_len && a[i] == b[i]) {
        ++i;
    }
    return i;
}

const Ops kAvx2Ops = {"avx2", &filter_positions_avx2, &common_prefix_avx2};

}  // namespace

const Ops& avx2_ops() { return kAvx2Ops; }

}  // namespace x3::kernels
