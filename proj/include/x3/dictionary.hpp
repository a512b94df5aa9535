#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "x3/bytes.hpp"
#include "x3/error.hpp"

namespace x3 {

//! Hard cap on the number of fragments; keeps every symbol alphabet
//! (fragment indexes plus the escape symbol) below the coder's 2^22
//! frequency-total budget with room for the adaptive counts.
inline constexpr std::uint32_t kMaxFragments = (1u << 21) - 2;

// Append-only fragment dictionary.
//
// Fragments are byte strings added explicitly by the parser; each gets the
// next dense index, and nothing is ever evicted or reordered.  Lookup runs
// over a byte trie whose terminal nodes carry the fragment index.  The
// dictionary has no prefix property — a stored fragment's prefixes are not
// themselves entries unless they were added — so the longest-match walk
// tracks the deepest terminal seen, not merely the deepest node reached.
class FragmentDict {
  public:
    struct Match {
        std::uint32_t index;
        std::uint32_t length;
    };

    //! Adds a fragment (1..2^32-1 bytes, not already present) and returns its
    //! index.  Duplicates are a caller bug and throw std::logic_error; the
    //! decoder screens with contains() first.
    std::uint32_t add_fragment(ByteSpan bytes);

    //! Longest fragment that matches buffer[pos..pos+len) in its entirety,
    //! with len <= limit.  Empty optional when nothing matches.
    std::optional<Match> longest_match(ByteSpan buffer, std::size_t pos,
                                       std::size_t limit) const;

    //! True when `bytes` is exactly a stored fragment.
    bool contains(ByteSpan bytes) const;

    //! Bytes of fragment `index`; throws CorruptError when out of range
    //! (a corrupt-bitstream signal in the decoder).
    ByteSpan get_fragment(std::uint32_t index) const;

    std::uint32_t size() const { return static_cast<std::uint32_t>(entries_.size()); }
    std::uint64_t fragment_bytes() const { return arena_.size(); }

    //! Rough heap footprint of the structure, for the stats report.
    std::uint64_t memory_bytes() const;

    //! Order-sensitive digest of the insertion sequence.
    std::uint64_t content_hash() const { return content_hash_; }

  private:
    struct Node {
        std::int32_t terminal = -1;      //!< fragment index or -1
        std::int32_t first_child = -1;
        std::int32_t next_sibling = -1;
        std::uint8_t byte = 0;           //!< edge label from the parent
    };

    struct Entry {
        std::uint64_t offset;
        std::uint32_t length;
    };

    std::int32_t find_child(std::int32_t node, std::uint8_t b) const;

    std::array<std::int32_t, 256> root_{[] {
        std::array<std::int32_t, 256> a{};
        a.fill(-1);
        return a;
    }()};
    std::vector<Node> nodes_;
    Bytes arena_;
    std::vector<Entry> entries_;
    std::uint64_t content_hash_ = kFnvOffsetBasis;
};

}  // namespace x3
