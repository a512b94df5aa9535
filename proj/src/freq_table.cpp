#include "x3/freq_table.hpp"

#include <algorithm>
#include <bit>
#include <cassert>

#include "x3/bytes.hpp"

namespace x3 {

std::uint32_t log2_units(std::uint32_t num, std::uint32_t den) {
    assert(num >= den && den >= 1);
    // Normalise num/den to a Q63 mantissa m in [1, 2) and a binary exponent,
    // then pull five fraction bits of log2(m) by repeated squaring.  The
    // result t is floor(32 * log2(num/den)); (t + 1) >> 1 rounds to the
    // nearest sixteenth of a bit.
    const std::uint64_t x = (static_cast<std::uint64_t>(num) << 32) / den;  // Q32
    const int k = 63 - std::countl_zero(x);
    std::uint64_t m = x << (63 - k);
    int frac = 0;
    for (int i = 0; i < 5; ++i) {
        const unsigned __int128 sq = static_cast<unsigned __int128>(m) * m;
        frac <<= 1;
        if (sq >= static_cast<unsigned __int128>(1) << 127) {
            frac |= 1;
            m = static_cast<std::uint64_t>(sq >> 64);
        } else {
            m = static_cast<std::uint64_t>(sq >> 63);
        }
    }
    const int t = 32 * (k - 32) + frac;
    return static_cast<std::uint32_t>((t + 1) >> 1);
}

std::uint32_t FreqTable::stored_count(std::uint32_t symbol) const {
    if (fenwick_) {
        return symbol < counts_.size() ? counts_[symbol] : 0;
    }
    const auto it = std::lower_bound(
        entries_.begin(), entries_.end(), symbol,
        [](const auto& e, std::uint32_t s) { return e.first < s; });
    return it != entries_.end() && it->first == symbol ? it->second : 0;
}

SymbolRange FreqTable::symbol_range(std::uint32_t symbol, std::uint32_t alphabet) const {
    assert(symbol < alphabet);
    std::uint32_t below = 0;  // stored mass at symbols < symbol
    std::uint32_t count = 0;
    if (fenwick_) {
        below = fenwick_prefix(std::min<std::uint32_t>(
            symbol, static_cast<std::uint32_t>(counts_.size())));
        count = stored_count(symbol);
    } else {
        for (const auto& [sym, cnt] : entries_) {
            if (sym < symbol) {
                below += cnt;
            } else {
                if (sym == symbol) {
                    count = cnt;
                }
                break;
            }
        }
    }
    const std::uint32_t lo = symbol + below;  // +1 floor for every symbol below
    return {lo, lo + count + 1, effective_total(alphabet)};
}

std::uint32_t FreqTable::find_symbol(std::uint32_t target, std::uint32_t alphabet) const {
    assert(target < effective_total(alphabet));
    if (fenwick_) {
        // Largest s with s + prefix(s) <= target; the cumulative line is
        // strictly increasing, so plain binary search over symbols works.
        std::uint32_t lo = 0;
        std::uint32_t hi = alphabet - 1;
        while (lo < hi) {
            const std::uint32_t mid = lo + (hi - lo + 1) / 2;
            const std::uint32_t below = fenwick_prefix(std::min<std::uint32_t>(
                mid, static_cast<std::uint32_t>(counts_.size())));
            if (mid + below <= target) {
                lo = mid;
            } else {
                hi = mid - 1;
            }
        }
        return lo;
    }
    // Vector mode: walk stored entries; the gaps between them hold
    // implicit-floor symbols whose cumulative values advance by one each.
    std::uint32_t below = 0;
    for (const auto& [sym, cnt] : entries_) {
        if (sym >= alphabet) {
            break;
        }
        if (target < sym + below) {
            break;  // target falls in the implicit gap before `sym`
        }
        if (target < sym + below + cnt + 1) {
            return sym;
        }
        below += cnt;
    }
    return target - below;
}

std::uint32_t FreqTable::code_length_units(std::uint32_t symbol, std::uint32_t alphabet) const {
    return log2_units(effective_total(alphabet), stored_count(symbol) + 1);
}

void FreqTable::add(std::uint32_t symbol) {
    if (fenwick_) {
        if (symbol >= counts_.size()) {
            fenwick_grow(symbol + 1);
        }
        counts_[symbol] += kIncrement;
        fenwick_add(symbol, kIncrement);
    } else {
        const auto it = std::lower_bound(
            entries_.begin(), entries_.end(), symbol,
            [](const auto& e, std::uint32_t s) { return e.first < s; });
        if (it != entries_.end() && it->first == symbol) {
            it->second += kIncrement;
        } else {
            entries_.insert(it, {symbol, kIncrement});
            if (entries_.size() > kUpgradeDistinct) {
                upgrade_to_fenwick();
            }
        }
    }
    stored_total_ += kIncrement;
    if (stored_total_ >= kRescaleBound) {
        rescale();
    }
}

void FreqTable::rescale() {
    stored_total_ = 0;
    if (fenwick_) {
        for (auto& c : counts_) {
            c >>= 1;
            stored_total_ += c;
        }
        std::fill(tree_.begin(), tree_.end(), 0);
        for (std::uint32_t s = 0; s < counts_.size(); ++s) {
            if (counts_[s] != 0) {
                fenwick_add(s, counts_[s]);
            }
        }
    } else {
        std::size_t out = 0;
        for (auto& [sym, cnt] : entries_) {
            cnt >>= 1;
            if (cnt != 0) {
                entries_[out++] = {sym, cnt};
                stored_total_ += cnt;
            }
        }
        entries_.resize(out);
    }
}

void FreqTable::upgrade_to_fenwick() {
    std::uint32_t max_symbol = entries_.empty() ? 0 : entries_.back().first;
    fenwick_ = true;
    fenwick_grow(max_symbol + 1);
    for (const auto& [sym, cnt] : entries_) {
        counts_[sym] = cnt;
        fenwick_add(sym, cnt);
    }
    entries_.clear();
    entries_.shrink_to_fit();
}

void FreqTable::fenwick_grow(std::uint32_t min_capacity) {
    const std::uint32_t cap = std::bit_ceil(std::max<std::uint32_t>(min_capacity, 64));
    if (cap <= counts_.size()) {
        return;
    }
    counts_.resize(cap, 0);
    tree_.assign(cap + 1, 0);
    for (std::uint32_t s = 0; s < cap; ++s) {
        if (counts_[s] != 0) {
            fenwick_add(s, counts_[s]);
        }
    }
}

void FreqTable::fenwick_add(std::uint32_t symbol, std::uint32_t delta) {
    for (std::uint32_t i = symbol + 1; i < tree_.size(); i += i & (0u - i)) {
        tree_[i] += delta;
    }
}

std::uint32_t FreqTable::fenwick_prefix(std::uint32_t count) const {
    std::uint32_t sum = 0;
    for (std::uint32_t i = count; i != 0; i -= i & (0u - i)) {
        sum += tree_[i];
    }
    return sum;
}

std::uint64_t FreqTable::memory_bytes() const {
    return sizeof(*this) + entries_.capacity() * sizeof(entries_[0]) +
           (counts_.capacity() + tree_.capacity()) * sizeof(std::uint32_t);
}

std::uint64_t FreqTable::state_hash(std::uint64_t seed) const {
    std::uint64_t h = fnv1a_word(stored_total_, seed);
    if (fenwick_) {
        for (std::uint32_t s = 0; s < counts_.size(); ++s) {
            if (counts_[s] != 0) {
                h = fnv1a_word((static_cast<std::uint64_t>(s) << 32) | counts_[s], h);
            }
        }
    } else {
        for (const auto& [sym, cnt] : entries_) {
            h = fnv1a_word((static_cast<std::uint64_t>(sym) << 32) | cnt, h);
        }
    }
    return h;
}

}  // namespace x3
