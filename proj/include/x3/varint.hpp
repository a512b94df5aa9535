#pragma once

#include <cstddef>
#include <cstdint>

#include "x3/bytes.hpp"
#include "x3/error.hpp"

namespace x3 {

//! Unsigned LEB128: seven payload bits per byte, least significant group
//! first, high bit set on every byte except the last.
inline void append_varint(Bytes& out, std::uint64_t value) {
    while (value >= 0x80) {
        out.push_back(static_cast<std::uint8_t>(value) | 0x80);
        value >>= 7;
    }
    out.push_back(static_cast<std::uint8_t>(value));
}

struct VarintResult {
    std::uint64_t value = 0;
    std::size_t length = 0;  //!< bytes consumed
};

//! Decodes one varint from the front of `in`. Throws CorruptError when the
//! encoding is truncated or longer than 63 bits worth of groups.
inline VarintResult read_varint(ByteSpan in) {
    std::uint64_t value = 0;
    std::size_t i = 0;
    unsigned shift = 0;
    for (;;) {
        if (i >= in.size()) {
            throw CorruptError("varint: truncated");
        }
        if (i >= 9) {
            throw CorruptError("varint: too long");
        }
        const std::uint8_t b = in[i++];
        value |= static_cast<std::uint64_t>(b & 0x7F) << shift;
        if ((b & 0x80) == 0) {
            break;
        }
        shift += 7;
    }
    return {value, i};
}

}  // namespace x3
