#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "x3/bytes.hpp"
#include "x3/window_search.hpp"

namespace x3 {

//! One compression trial at a fixed parameter point.
struct TrialResult {
    SearchParams params;
    std::uint64_t compressed_bytes = 0;
    double ratio = 0.0;
    double seconds = 0.0;
};

//! The space the per-file search walks.  Window sizes are evaluated
//! independently (concurrently when threads allows); within a window the
//! match threshold is hill-climbed from a window-scaled anchor, and the
//! guard combinations are tried at the per-window best threshold.
struct SearchSpace {
    std::vector<std::uint32_t> window_sizes = {1024, 2048, 4096, 8192,
                                               16384, 32768, 65536};
    std::vector<std::pair<bool, bool>> guard_combos = {{true, false},
                                                       {false, false}};
    std::uint32_t max_match_len = 64;
    //! Sweep every threshold up to 4x the anchor instead of hill climbing.
    bool exhaustive_matches = false;
    //! Wall-clock cutoff; the result is flagged partial when it fires.
    std::optional<double> time_budget_seconds;
    //! 0 = one worker per hardware thread, capped by X3_THREADS.
    std::uint32_t threads = 0;
};

struct OptimizeResult {
    TrialResult best;
    std::vector<TrialResult> trials;  //!< every evaluated point, in order
    bool partial = false;             //!< the time budget cut the search short
};

//! Match-threshold anchor for a window: scales the default-window default
//! linearly, never below one.
std::uint32_t anchor_matches(std::uint32_t window_size);

//! Compresses `input` once at `params` and reports the outcome.
TrialResult evaluate_point(ByteSpan input, const SearchParams& params);

//! Per-file parameter search.  Deterministic for a given (input, space):
//! evaluation order is fixed and ties prefer smaller windows, then smaller
//! thresholds, then fewer guards.
OptimizeResult optimize(ByteSpan input, const SearchSpace& space = {});

}  // namespace x3
