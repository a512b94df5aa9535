#pragma once

#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

namespace x3 {

//! One symbol's slice of the cumulative frequency line.
struct SymbolRange {
    std::uint32_t cum_lo;
    std::uint32_t cum_hi;
    std::uint32_t total;
};

// Adaptive frequency table over a growing alphabet 0..alphabet-1.
//
// Only nonzero stored counts are kept; every symbol below `alphabet`
// additionally owns an implicit floor count of one (the Laplace +1), so
// nothing ever has probability zero and the alphabet can grow without
// touching the table.  The effective total is stored_total + alphabet and
// stays below the range coder's 2^22 budget because stored totals rescale
// at 2^16 and alphabets stay below 2^21.
//
// Storage starts as a small sorted vector and upgrades to a Fenwick tree
// once the table has seen enough distinct symbols for linear walks to hurt.
class FreqTable {
  public:
    //! Update increment: one symbol observation adds 32 to its stored count.
    static constexpr std::uint32_t kIncrement = 32;
    //! Stored totals at or above this bound are halved (floor) after update.
    static constexpr std::uint32_t kRescaleBound = 1u << 16;

    std::uint32_t stored_total() const { return stored_total_; }
    std::uint32_t stored_count(std::uint32_t symbol) const;
    std::uint32_t effective_total(std::uint32_t alphabet) const {
        return stored_total_ + alphabet;
    }

    //! Coding interval of `symbol` under the effective model.
    SymbolRange symbol_range(std::uint32_t symbol, std::uint32_t alphabet) const;

    //! Inverse of symbol_range: the symbol owning cumulative target
    //! `target` (< effective_total).
    std::uint32_t find_symbol(std::uint32_t target, std::uint32_t alphabet) const;

    //! round(16 * log2(effective_total / effective_freq(symbol))) computed in
    //! fixed point — the code-length estimate, in sixteenths of a bit, that
    //! the selector charges for coding `symbol` with this table.
    std::uint32_t code_length_units(std::uint32_t symbol, std::uint32_t alphabet) const;

    //! Adds kIncrement to stored(symbol), then rescales if the stored total
    //! reached kRescaleBound.
    void add(std::uint32_t symbol);

    std::uint64_t memory_bytes() const;
    std::uint64_t state_hash(std::uint64_t seed) const;

  private:
    void rescale();
    void upgrade_to_fenwick();
    void fenwick_grow(std::uint32_t min_capacity);
    void fenwick_add(std::uint32_t symbol, std::uint32_t delta);
    std::uint32_t fenwick_prefix(std::uint32_t count) const;  //!< sum of counts below `count`

    // Sorted-vector mode until entries_ exceeds this, then Fenwick mode.
    static constexpr std::size_t kUpgradeDistinct = 64;

    std::vector<std::pair<std::uint32_t, std::uint32_t>> entries_;  //!< (symbol, count), sorted
    std::vector<std::uint32_t> counts_;  //!< Fenwick mode: direct counts
    std::vector<std::uint32_t> tree_;    //!< Fenwick mode: prefix tree (1-based)
    std::uint32_t stored_total_ = 0;
    bool fenwick_ = false;
};

//! round(16 * log2(num / den)) for num >= den >= 1; exact integer arithmetic.
std::uint32_t log2_units(std::uint32_t num, std::uint32_t den);

}  // namespace x3
