#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <vector>

#include "x3/bytes.hpp"
#include "x3/dictionary.hpp"

namespace x3 {

//! Parse-time knobs.  The window is the forward-looking span [p, p+W) that
//! repeat counting runs over; max_matches is the occurrence threshold sweep
//! bound M; max_match_len caps candidate fragment lengths.
struct SearchParams {
    std::uint32_t window_size = 8192;
    std::uint32_t max_matches = 28;
    std::uint32_t max_match_len = 64;
    //! Truncate a candidate when a long dictionary match starts inside it.
    bool guard_dictionary = true;
    //! Same idea against upcoming window repeats; costly, default off.
    bool guard_window = false;
};

//! Bounds accepted everywhere: window 1..2^31-1, matches >= 1, length 1..4096.
void validate(const SearchParams& params);

//! Number of occurrences of buffer[p..p+l) that start in (p, p+window] and
//! lie inside both the window [p, p+window) and the buffer.  Overlapping
//! occurrences count.  Plain definitional scan; requires p + l <= size.
std::uint32_t count_occurrences(ByteSpan buffer, std::size_t p, std::size_t l,
                                std::size_t window);

// Repeat scanner for one buffer.
//
// Per-byte posting lists (built once) seed the candidate set for a position;
// each length step keeps only candidates whose next byte matches, so a
// window pass costs O(c_1 + sum of the counts) instead of O(W * L).  The
// resulting occurrence profile feeds the threshold sweep: scanning
// thresholds m = M..1 against lengths l = L..1 and returning the first
// length whose count clears the threshold is equivalent to capping the
// threshold at c_1 - 1 and taking the longest length that still clears it,
// which is how most_frequent_length computes it.
class WindowSearcher {
  public:
    WindowSearcher(ByteSpan buffer, const SearchParams& params);

    //! Occurrence counts c_1..c_k at position p, where k stops at the last
    //! nonzero count (or at min(max_match_len, remaining)).  The reference
    //! stays valid until the next call on this object.
    const std::vector<std::uint32_t>& occurrence_profile(std::size_t p);

    //! The threshold-sweep length choice at p: never 0, never beyond the
    //! remaining buffer; 1 when nothing repeats.  No guards applied.
    std::uint32_t most_frequent_length(std::size_t p);

    //! Applies the enabled future-match guards to a candidate length,
    //! returning the (possibly truncated) length to actually emit.
    std::uint32_t apply_guard(std::size_t p, std::uint32_t candidate_len,
                              const FragmentDict& dict);

    //! most_frequent_length + apply_guard.
    std::uint32_t best_length(std::size_t p, const FragmentDict& dict);

    //! Longest repeat at p under a forced threshold of one: the largest l
    //! with at least two window occurrences, else 1.
    std::uint32_t longest_repeat(std::size_t p);

  private:
    void seed_candidates(std::size_t p);

    ByteSpan buf_;
    SearchParams params_;
    std::array<std::vector<std::uint32_t>, 256> postings_;
    std::vector<std::uint32_t> candidates_;
    std::vector<std::uint32_t> profile_;
};

//! One-shot convenience wrappers (tests, small inputs); they build the
//! posting lists every call.
std::uint32_t search_in_window(ByteSpan buffer, std::size_t p, const SearchParams& params);

}  // namespace x3
