#include <doctest.h>

#include <cstring>
#include <vector>

#include "testutil.hpp"
#include "x3/kernels.hpp"

using x3::kernels::Ops;

TEST_SUITE_BEGIN("kernels");

TEST_CASE("at least the scalar variant is available and active is one of them") {
    const auto variants = x3::kernels::available_ops();
    REQUIRE(!variants.empty());
    CHECK(std::string(variants[0]->name) == "scalar");
    bool found = false;
    for (const Ops* ops : variants) {
        found |= ops == &x3::kernels::active_ops();
    }
    CHECK(found);
}

TEST_CASE("filter_positions equivalence across variants") {
    testutil::Rng rng(0x5eed0010);
    for (int iter = 0; iter < 3000; ++iter) {
        const std::size_t n = 1 + testutil::below(rng, 400);
        const unsigned alphabet = iter % 3 == 0 ? 2 : 256;  // dense and sparse hits
        const x3::Bytes data = testutil::random_bytes(rng, n, alphabet);
        // Ascending positions with duplicates-free sampling.
        std::vector<std::uint32_t> positions;
        for (std::uint32_t q = 0; q < n; ++q) {
            if (testutil::below(rng, 3) != 2) {
                positions.push_back(q);
            }
        }
        const auto key = static_cast<std::uint8_t>(testutil::below(rng, alphabet));

        std::vector<std::uint32_t> expected = positions;
        const std::size_t expected_n = x3::kernels::scalar_ops().filter_positions(
            data.data(), data.size(), expected.data(), expected.size(), key);
        expected.resize(expected_n);

        for (const Ops* ops : x3::kernels::available_ops()) {
            std::vector<std::uint32_t> got = positions;
            const std::size_t got_n = ops->filter_positions(
                data.data(), data.size(), got.data(), got.size(), key);
            got.resize(got_n);
            REQUIRE_MESSAGE(got == expected, "variant ", ops->name);
        }
    }
}

TEST_CASE("filter_positions keeps every match and preserves order") {
    // All-match and no-match extremes.
    x3::Bytes data(200, 0x41);
    std::vector<std::uint32_t> all;
    for (std::uint32_t q = 0; q < 200; ++q) {
        all.push_back(q);
    }
    for (const Ops* ops : x3::kernels::available_ops()) {
        std::vector<std::uint32_t> buf = all;
        CHECK(ops->filter_positions(data.data(), data.size(), buf.data(), buf.size(), 0x41) == 200);
        buf = all;
        CHECK(ops->filter_positions(data.data(), data.size(), buf.data(), buf.size(), 0x42) == 0);
        buf.clear();
        CHECK(ops->filter_positions(data.data(), data.size(), buf.data(), 0, 0x41) == 0);
    }
}

TEST_CASE("filter_positions near the buffer end") {
    // Positions adjacent to `limit` exercise the vector/scalar split inside
    // the gather-based variants.
    testutil::Rng rng(0x5eed0011);
    for (int iter = 0; iter < 500; ++iter) {
        const std::size_t n = 12 + testutil::below(rng, 64);
        const x3::Bytes data = testutil::random_bytes(rng, n, 2);
        std::vector<std::uint32_t> positions;
        for (std::uint32_t q = static_cast<std::uint32_t>(n > 12 ? n - 12 : 0);
             q < n; ++q) {
            positions.push_back(q);
        }
        std::vector<std::uint32_t> expected = positions;
        const std::size_t en = x3::kernels::scalar_ops().filter_positions(
            data.data(), data.size(), expected.data(), expected.size(), 1);
        expected.resize(en);
        for (const Ops* ops : x3::kernels::available_ops()) {
            std::vector<std::uint32_t> got = positions;
            const std::size_t gn = ops->filter_positions(data.data(), data.size(),
                                                         got.data(), got.size(), 1);
            got.resize(gn);
            REQUIRE_MESSAGE(got == expected, "variant ", ops->name);
        }
    }
}

TEST_CASE("common_prefix equivalence across variants") {
    testutil::Rng rng(0x5eed0012);
    for (int iter = 0; iter < 4000; ++iter) {
        const std::size_t n = 1 + testutil::below(rng, 300);
        x3::Bytes a = testutil::random_bytes(rng, n, 4);
        x3::Bytes b = a;
        // Flip a byte somewhere (or nowhere) to set the mismatch point.
        if (testutil::below(rng, 8) != 0) {
            const std::size_t at = testutil::below(rng, n);
            b[at] ^= 1 + static_cast<std::uint8_t>(testutil::below(rng, 255));
        }
        const std::size_t max_len = testutil::below(rng, n + 1);
        const std::size_t expected =
            x3::kernels::scalar_ops().common_prefix(a.data(), b.data(), max_len);
        for (const Ops* ops : x3::kernels::available_ops()) {
            REQUIRE_MESSAGE(ops->common_prefix(a.data(), b.data(), max_len) == expected,
                            "variant ", ops->name);
        }
    }
}

TEST_CASE("common_prefix edge lengths") {
    x3::Bytes a(100, 0x11);
    x3::Bytes b(100, 0x11);
    for (const Ops* ops : x3::kernels::available_ops()) {
        CHECK(ops->common_prefix(a.data(), b.data(), 0) == 0);
        CHECK(ops->common_prefix(a.data(), b.data(), 100) == 100);
        b[99] = 0x12;
        CHECK(ops->common_prefix(a.data(), b.data(), 100) == 99);
        b[0] = 0x12;
        CHECK(ops->common_prefix(a.data(), b.data(), 100) == 0);
        b[0] = 0x11;
        b[99] = 0x11;
    }
}

TEST_SUITE_END();
