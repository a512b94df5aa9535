// NEON variant of the search kernels for aarch64.  NEON has no gather, so
// position filtering falls back to the scalar kernel; the prefix scan is the
// part worth vectorising.

#include <arm_neon.h>

#include <cstdint>

#include "x3/kernels.hpp"

namespace x3::kernels {

namespace {

std::size_t common_prefix_neon(const std::uint8_t* a, const std::uint8_t* b,
                               std::size_t max_len) {
    std::size_t i = 0;
    for (; i + 16 <= max_len; i += 16) {
        const uint8x16_t va = vld1q_u8(a + i);
        const uint8x16_t vb = vld1q_u8(b + i);
        const uint8x16_t eq = vceqq_u8(va, vb);
        if (vminvq_u8(eq) != 0xFF) {
            std::uint8_t lanes[16];
            vst1q_u8(lanes, eq);
            std::size_t k = 0;
            while (lanes[k] == 0xFF) {
                ++k;
            }
            return i + k;
        }
    }
    while (i < max_len && a[i] == b[i]) {
        ++i;
    }
    return i;
}

std::size_t filter_positions_neon(const std::uint8_t* base, std::size_t limit,
                                  std::uint32_t* positions, std::size_t n,
                                  std::uint8_t key) {
    return scalar_ops().filter_positions(base, limit, positions, n, key);
}

const Ops kNeonOps = {"neon", &filter_positions_neon, &common_prefix_neon};

}  // namespace

const Ops& neon_ops() { return kNeonOps; }

}  // namespace x3::kernels
