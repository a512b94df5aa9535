#include "x3/range_coder.hpp"

#include <stdexcept>

namespace x3 {

namespace {

// Reads past the declared end are tolerated only inside the final flush
// window; anything further means the payload was cut short.
constexpr std::uint32_t kOverrunSlack = 16;

void check_interval(std::uint32_t cum_lo, std::uint32_t cum_hi, std::uint32_t total) {
    if (total == 0 || total >= kMaxTotal || cum_lo >= cum_hi || cum_hi > total) {
        throw std::logic_error("range coder: invalid interval");
    }
}

}  // namespace

void RangeEncoder::encode(std::uint32_t cum_lo, std::uint32_t cum_hi, std::uint32_t total) {
    check_interval(cum_lo, cum_hi, total);
    if (finished_) {
        throw std::logic_error("range coder: encode after finish");
    }
    range_ /= total;
    low_ += static_cast<std::uint64_t>(cum_lo) * range_;
    range_ *= cum_hi - cum_lo;
    while (range_ < kTopValue) {
        shift_low();
        range_ <<= 8;
    }
}

void RangeEncoder::finish() {
    if (finished_) {
        throw std::logic_error("range coder: finish called twice");
    }
    finished_ = true;
    for (int i = 0; i < 5; ++i) {
        shift_low();
    }
}

void RangeEncoder::shift_low() {
    const auto low32 = static_cast<std::uint32_t>(low_);
    if (low32 < 0xFF000000u || (low_ >> 32) != 0) {
        const auto carry = static_cast<std::uint8_t>(low_ >> 32);
        out_->push_back(static_cast<std::uint8_t>(cache_ + carry));
        while (pending_ != 0) {
            out_->push_back(static_cast<std::uint8_t>(0xFFu + carry));
            --pending_;
        }
        cache_ = static_cast<std::uint8_t>(low32 >> 24);
    } else {
        ++pending_;
    }
    low_ = static_cast<std::uint32_t>(low32 << 8);
}

RangeDecoder::RangeDecoder(ByteSpan in) : in_(in) {
    next_byte();  // the encoder's leading cache byte, always zero
    for (int i = 0; i < 4; ++i) {
        code_ = (code_ << 8) | next_byte();
    }
}

std::uint32_t RangeDecoder::decode_target(std::uint32_t total) {
    if (total == 0 || total >= kMaxTotal) {
        throw std::logic_error("range coder: invalid total");
    }
    range_ /= total;
    const std::uint32_t target = code_ / range_;
    if (target >= total) {
        throw CorruptError("range coder: target outside model");
    }
    return target;
}

void RangeDecoder::confirm(std::uint32_t cum_lo, std::uint32_t cum_hi, std::uint32_t total) {
    check_interval(cum_lo, cum_hi, total);
    // range_ still holds the value divided by `total` in decode_target().
    code_ -= cum_lo * range_;
    range_ *= cum_hi - cum_lo;
    while (range_ < kTopValue) {
        code_ = (code_ << 8) | next_byte();
        range_ <<= 8;
    }
}

std::uint8_t RangeDecoder::next_byte() {
    if (pos_ < in_.size()) {
        return in_[pos_++];
    }
    if (++overrun_ > kOverrunSlack) {
        throw CorruptError("range coder: payload truncated");
    }
    return 0;
}

}  // namespace x3
