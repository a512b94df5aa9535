#include "x3/dictionary.hpp"

#include <algorithm>
#include <stdexcept>

namespace x3 {

std::int32_t FragmentDict::find_child(std::int32_t node, std::uint8_t b) const {
    std::int32_t child =
        node < 0 ? root_[b] : nodes_[static_cast<std::size_t>(node)].first_child;
    if (node < 0) {
        return child;  // the root fan-out array is indexed by byte directly
    }
    while (child >= 0 && nodes_[static_cast<std::size_t>(child)].byte != b) {
        child = nodes_[static_cast<std::size_t>(child)].next_sibling;
    }
    return child;
}

std::uint32_t FragmentDict::add_fragment(ByteSpan bytes) {
    if (bytes.empty()) {
        throw std::logic_error("dictionary: empty fragment");
    }
    if (size() >= kMaxFragments) {
        throw CapExceededError("dictionary: fragment cap reached");
    }

    std::int32_t node = -1;
    std::size_t depth = 0;
    for (; depth < bytes.size(); ++depth) {
        const std::int32_t next = find_child(node, bytes[depth]);
        if (next < 0) {
            break;
        }
        node = next;
    }
    for (; depth < bytes.size(); ++depth) {
        const auto fresh = static_cast<std::int32_t>(nodes_.size());
        Node n;
        n.byte = bytes[depth];
        if (node < 0) {
            n.next_sibling = root_[bytes[depth]];
            root_[bytes[depth]] = fresh;
        } else {
            n.next_sibling = nodes_[static_cast<std::size_t>(node)].first_child;
            nodes_[static_cast<std::size_t>(node)].first_child = fresh;
        }
        nodes_.push_back(n);
        node = fresh;
    }

    Node& tail = nodes_[static_cast<std::size_t>(node)];
    if (tail.terminal >= 0) {
        throw std::logic_error("dictionary: duplicate fragment");
    }
    const std::uint32_t index = size();
    tail.terminal = static_cast<std::int32_t>(index);

    entries_.push_back({arena_.size(), static_cast<std::uint32_t>(bytes.size())});
    arena_.insert(arena_.end(), bytes.begin(), bytes.end());

    std::uint64_t h = fnv1a_word(index, content_hash_);
    content_hash_ = fnv1a(bytes, h);
    return index;
}

std::optional<FragmentDict::Match> FragmentDict::longest_match(
    ByteSpan buffer, std::size_t pos, std::size_t limit) const {
    const std::size_t avail = std::min(limit, buffer.size() - pos);
    std::optional<Match> best;
    std::int32_t node = -1;
    for (std::size_t i = 0; i < avail; ++i) {
        node = find_child(node, buffer[pos + i]);
        if (node < 0) {
            break;
        }
        const std::int32_t term = nodes_[static_cast<std::size_t>(node)].terminal;
        if (term >= 0) {
            best = Match{static_cast<std::uint32_t>(term),
                         static_cast<std::uint32_t>(i + 1)};
        }
    }
    return best;
}

bool FragmentDict::contains(ByteSpan bytes) const {
    std::int32_t node = -1;
    for (std::size_t i = 0; i < bytes.size(); ++i) {
        node = find_child(node, bytes[i]);
        if (node < 0) {
            return false;
        }
    }
    return node >= 0 && nodes_[static_cast<std::size_t>(node)].terminal >= 0;
}

ByteSpan FragmentDict::get_fragment(std::uint32_t index) const {
    if (index >= size()) {
        throw CorruptError("dictionary: fragment index out of range");
    }
    const Entry& e = entries_[index];
    return ByteSpan(arena_.data() + e.offset, e.length);
}

std::uint64_t FragmentDict::memory_bytes() const {
    return sizeof(*this) + nodes_.capacity() * sizeof(Node) + arena_.capacity() +
           entries_.capacity() * sizeof(Entry);
}

}  // namespace x3
