#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "x3/bytes.hpp"
#include "x3/window_search.hpp"

namespace x3 {

// Container layout: magic "x3" (0x78 0x33), version 0x01, the original
// length as an unsigned LEB128 varint, then the range-coded event stream.
// Parse parameters are deliberately absent — decoding never needs them.
inline constexpr std::uint8_t kMagic0 = 0x78;
inline constexpr std::uint8_t kMagic1 = 0x33;
inline constexpr std::uint8_t kVersion = 0x01;
inline constexpr std::size_t kHeaderBytes = 3;

//! Whole-buffer parser limit; positions are kept as 32-bit values and the
//! vector kernels index with signed 32-bit lanes.
inline constexpr std::uint64_t kMaxInputBytes = 0x7FFF0000ull;

//! Counters filled by a compression run.  structure_bytes is an estimate of
//! the heap held by the dictionary and the model tables at the end.
struct CompressStats {
    std::uint64_t input_bytes = 0;
    std::uint64_t output_bytes = 0;
    std::uint64_t dict_ref_events = 0;
    std::uint64_t raw_fragment_events = 0;
    std::uint64_t dict_entries = 0;
    std::uint64_t dict_fragment_bytes = 0;
    std::uint64_t order1_instances = 0;
    std::uint64_t order2_instances = 0;
    std::uint64_t structure_bytes = 0;
    double ratio = 0.0;  //!< input / output
    double seconds = 0.0;
};

//! Test instrumentation: both codec directions append one digest per event
//! (mixing the coded symbol, its interval, and the dictionary digest), plus
//! a deep model hash at the end.  Lockstep runs must produce equal traces.
struct EventTrace {
    std::vector<std::uint64_t> event_hashes;
    std::uint64_t final_model_hash = 0;
    std::uint64_t final_dict_hash = 0;
};

Bytes compress(ByteSpan input, const SearchParams& params = {},
               CompressStats* stats = nullptr, EventTrace* trace = nullptr);

Bytes decompress(ByteSpan container, EventTrace* trace = nullptr);

}  // namespace x3
