#include "x3/kernels.hpp"

#include <cstdlib>
#include <cstring>

namespace x3::kernels {

namespace {

std::size_t filter_positions_scalar(const std::uint8_t* base, std::size_t limit,
                                    std::uint32_t* positions, std::size_t n,
                                    std::uint8_t key) {
    (void)limit;
    std::size_t out = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const std::uint32_t q = positions[i];
        positions[out] = q;
        out += base[q] == key;
    }
    return out;
}

std::size_t common_prefix_scalar(const std::uint8_t* a, const std::uint8_t* b,
                                 std::size_t max_len) {
    std::size_t i = 0;
    while (i < max_len && a[i] == b[i]) {
        ++i;
    }
    return i;
}

const Ops kScalarOps = {"scalar", &filter_positions_scalar, &common_prefix_scalar};

const Ops* pick_active() {
    const char* forced = std::getenv("X3_KERNEL");
    for (const Ops* ops : available_ops()) {
        if (forced != nullptr ? std::strcmp(ops->name, forced) == 0
                              : ops != &kScalarOps) {
            return ops;
        }
    }
    return &kScalarOps;
}

}  // namespace

#if defined(X3_HAVE_AVX2_TU)
const Ops& avx2_ops();  // defined in kernels_avx2.cpp
#endif
#if defined(X3_HAVE_NEON_TU)
const Ops& neon_ops();  // defined in kernels_neon.cpp
#endif

const Ops& scalar_ops() { return kScalarOps; }

std::vector<const Ops*> available_ops() {
    std::vector<const Ops*> ops{&kScalarOps};
#if defined(X3_HAVE_AVX2_TU)
    __builtin_cpu_init();
    if (__builtin_cpu_supports("avx2")) {
        ops.push_back(&avx2_ops());
    }
#endif
#if defined(X3_HAVE_NEON_TU)
    ops.push_back(&neon_ops());
#endif
    return ops;
}

const Ops& active_ops() {
    static const Ops* chosen = pick_active();
    return *chosen;
}

}  // namespace x3::kernels
