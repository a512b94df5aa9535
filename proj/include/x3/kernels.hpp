#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace x3::kernels {

// Small data-parallel primitives behind the window search.  Every entry point
// has a scalar reference implementation; vector variants (AVX2 on x86-64,
// NEON on aarch64) are compiled in separate translation units and selected at
// runtime.  All variants are exact drop-in replacements: same results, same
// ordering.

struct Ops {
    const char* name;

    //! Compacts `positions[0..n)` in place, keeping ascending order, to the
    //! positions q with base[q] == key.  Returns the new count.  Every
    //! position must satisfy q < limit, and base[0..limit) must be readable.
    std::size_t (*filter_positions)(const std::uint8_t* base, std::size_t limit,
                                    std::uint32_t* positions, std::size_t n,
                                    std::uint8_t key);

    //! Length of the longest common prefix of a[0..max_len) and b[0..max_len).
    std::size_t (*common_prefix)(const std::uint8_t* a, const std::uint8_t* b,
                                 std::size_t max_len);
};

//! Portable reference implementation.
const Ops& scalar_ops();

//! The variant picked for this CPU (set once, thread-safe).  The environment
//! variable X3_KERNEL can force a variant by name ("scalar", "avx2", "neon").
const Ops& active_ops();

//! All variants that can run on this machine, scalar first.  Used by the
//! equivalence tests.
std::vector<const Ops*> available_ops();

}  // namespace x3::kernels
