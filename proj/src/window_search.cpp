#include "x3/window_search.hpp"

#include <algorithm>
#include <cassert>
#include <stdexcept>

#include "x3/kernels.hpp"

namespace x3 {

void validate(const SearchParams& params) {
    if (params.window_size == 0 || params.window_size > 0x7FFFFFFFu) {
        throw std::invalid_argument("params: window_size out of range");
    }
    if (params.max_matches == 0) {
        throw std::invalid_argument("params: max_matches must be positive");
    }
    if (params.max_match_len == 0 || params.max_match_len > 4096) {
        throw std::invalid_argument("params: max_match_len out of range");
    }
}

std::uint32_t count_occurrences(ByteSpan buffer, std::size_t p, std::size_t l,
                                std::size_t window) {
    assert(l >= 1 && p + l <= buffer.size());
    const std::size_t window_end = std::min(p + window, buffer.size());
    if (window_end < p + l) {
        return 0;
    }
    std::uint32_t count = 0;
    for (std::size_t q = p + 1; q + l <= window_end; ++q) {
        count += std::equal(buffer.begin() + static_cast<std::ptrdiff_t>(q),
                            buffer.begin() + static_cast<std::ptrdiff_t>(q + l),
                            buffer.begin() + static_cast<std::ptrdiff_t>(p));
    }
    return count;
}

WindowSearcher::WindowSearcher(ByteSpan buffer, const SearchParams& params)
    : buf_(buffer), params_(params) {
    validate(params);
    for (std::size_t i = 0; i < buf_.size(); ++i) {
        postings_[buf_[i]].push_back(static_cast<std::uint32_t>(i));
    }
}

void WindowSearcher::seed_candidates(std::size_t p) {
    // Candidates for length 1: positions q in (p, min(p+W, n)) whose byte
    // equals buffer[p]; the posting list makes this a slice copy.
    const std::vector<std::uint32_t>& list = postings_[buf_[p]];
    const std::size_t window_end = std::min(p + params_.window_size, buf_.size());
    const auto first = std::upper_bound(list.begin(), list.end(),
                                        static_cast<std::uint32_t>(p));
    const auto last = std::lower_bound(first, list.end(),
                                       static_cast<std::uint32_t>(window_end));
    candidates_.assign(first, last);
}

const std::vector<std::uint32_t>& WindowSearcher::occurrence_profile(std::size_t p) {
    assert(p < buf_.size());
    profile_.clear();
    seed_candidates(p);
    const std::size_t max_len =
        std::min<std::size_t>(params_.max_match_len, buf_.size() - p);
    const std::size_t window_end = std::min(p + params_.window_size, buf_.size());
    std::size_t l = 1;
    profile_.push_back(static_cast<std::uint32_t>(candidates_.size()));
    while (l < max_len && !candidates_.empty()) {
        // An occurrence of length l+1 must end inside both the window and
        // the buffer; candidates are ascending, so this trims a tail.
        const std::size_t bound = window_end - (l + 1);
        while (!candidates_.empty() && candidates_.back() > bound) {
            candidates_.pop_back();
        }
        const std::size_t kept = kernels::active_ops().filter_positions(
            buf_.data() + l, buf_.size() - l, candidates_.data(),
            candidates_.size(), buf_[p + l]);
        candidates_.resize(kept);
        ++l;
        profile_.push_back(static_cast<std::uint32_t>(candidates_.size()));
    }
    return profile_;
}

std::uint32_t WindowSearcher::most_frequent_length(std::size_t p) {
    const std::vector<std::uint32_t>& prof = occurrence_profile(p);
    if (prof.empty() || prof[0] < 2) {
        return 1;
    }
    // Highest threshold the sweep can clear is min(M, c_1 - 1); the answer
    // is the longest length whose count still exceeds it.
    const std::uint32_t threshold =
        std::min<std::uint32_t>(params_.max_matches, prof[0] - 1);
    for (std::size_t l = prof.size(); l >= 1; --l) {
        if (prof[l - 1] > threshold) {
            return static_cast<std::uint32_t>(l);
        }
    }
    return 1;
}

std::uint32_t WindowSearcher::longest_repeat(std::size_t p) {
    seed_candidates(p);
    const std::size_t window_end = std::min(p + params_.window_size, buf_.size());
    const std::size_t max_len =
        std::min<std::size_t>(params_.max_match_len, buf_.size() - p);
    // c_l >= 2 exactly when at least two candidates reach length l, so the
    // answer is the second-largest per-candidate match length.
    std::size_t top = 0;
    std::size_t second = 0;
    for (const std::uint32_t q : candidates_) {
        const std::size_t cap =
            std::min({max_len, window_end - q, buf_.size() - q});
        const std::size_t len = kernels::active_ops().common_prefix(
            buf_.data() + p, buf_.data() + q, cap);
        if (len >= top) {
            second = top;
            top = len;
        } else if (len > second) {
            second = len;
        }
    }
    return static_cast<std::uint32_t>(std::max<std::size_t>(second, 1));
}

std::uint32_t WindowSearcher::apply_guard(std::size_t p, std::uint32_t candidate_len,
                                          const FragmentDict& dict) {
    if (candidate_len < 2 ||
        (!params_.guard_dictionary && !params_.guard_window)) {
        return candidate_len;
    }
    const std::uint64_t wanted = 2ull * candidate_len;
    for (std::uint32_t d = 1; d < candidate_len; ++d) {
        if (params_.guard_dictionary) {
            const auto m = dict.longest_match(buf_, p + d, buf_.size() - (p + d));
            if (m && m->length >= wanted) {
                return d;
            }
        }
        if (params_.guard_window && longest_repeat(p + d) >= wanted) {
            return d;
        }
    }
    return candidate_len;
}

std::uint32_t WindowSearcher::best_length(std::size_t p, const FragmentDict& dict) {
    return apply_guard(p, most_frequent_length(p), dict);
}

std::uint32_t search_in_window(ByteSpan buffer, std::size_t p,
                               const SearchParams& params) {
    WindowSearcher searcher(buffer, params);
    return searcher.most_frequent_length(p);
}

}  // namespace x3
