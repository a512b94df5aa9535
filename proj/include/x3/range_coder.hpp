#pragma once

#include <cstddef>
#include <cstdint>

#include "x3/bytes.hpp"
#include "x3/error.hpp"

namespace x3 {

// Byte-oriented range coder.
//
// The encoder keeps a 32-bit range and a 64-bit low accumulator; the extra
// bits of `low` hold the carry, which is propagated through a cached byte
// plus a run of pending 0xFF bytes (no bit stuffing).  Renormalisation emits
// one byte at a time and keeps the range at or above 2^24, so any cumulative
// frequency total below 2^22 can be coded without rounding the interval to
// zero.  The first output byte is always zero (the initial cache) and the
// flush appends the remaining 32 bits of `low`; a stream of zero symbols is
// therefore exactly five bytes.
//
// The decoder mirrors the arithmetic on `code - low`, so it needs no carry
// handling.  It is fed the payload span up front; reads past the end are
// served as zero bytes for a small fixed slack (enough to cover the final
// flush window) and raise CorruptError beyond that.

inline constexpr std::uint32_t kMaxTotal = 1u << 22;   //!< exclusive bound on frequency totals
inline constexpr std::uint32_t kTopValue = 1u << 24;   //!< renormalisation threshold

class RangeEncoder {
  public:
    //! Encoded bytes are appended to `out`, which must outlive the encoder.
    explicit RangeEncoder(Bytes& out) : out_(&out) {}

    //! Narrows the interval to [cum_lo, cum_hi) out of `total`.
    //! Requires cum_lo < cum_hi <= total < 2^22.
    void encode(std::uint32_t cum_lo, std::uint32_t cum_hi, std::uint32_t total);

    //! Flushes the accumulator. Must be called exactly once, last.
    void finish();

  private:
    void shift_low();

    Bytes* out_;
    std::uint64_t low_ = 0;
    std::uint32_t range_ = 0xFFFFFFFFu;
    std::uint8_t cache_ = 0;
    std::uint64_t pending_ = 0;  //!< length of the 0xFF run behind the cache byte
    bool finished_ = false;
};

class RangeDecoder {
  public:
    explicit RangeDecoder(ByteSpan in);

    //! Returns the cumulative-frequency target of the next symbol, a value in
    //! [0, total).  Must be followed by exactly one confirm() with the
    //! interval of the symbol that owns the target.
    std::uint32_t decode_target(std::uint32_t total);

    //! Narrows the interval exactly as the encoder did for this symbol.
    void confirm(std::uint32_t cum_lo, std::uint32_t cum_hi, std::uint32_t total);

    std::size_t bytes_consumed() const { return pos_; }

    //! Zero bytes served past the end of the payload; an intact stream never
    //! needs any (the encoder emits exactly the bytes the decoder reads).
    std::uint32_t overrun() const { return overrun_; }

  private:
    std::uint8_t next_byte();

    ByteSpan in_;
    std::size_t pos_ = 0;
    std::uint32_t range_ = 0xFFFFFFFFu;
    std::uint32_t code_ = 0;
    std::uint32_t overrun_ = 0;  //!< zero bytes served past the end of `in`
};

}  // namespace x3
