#include "x3/optimizer.hpp"

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <future>
#include <set>
#include <thread>
#include <tuple>

#include "x3/codec.hpp"

namespace x3 {

namespace {

using Clock = std::chrono::steady_clock;

//! Strict weak order for tie-breaking equal compressed sizes.
auto rank_key(const SearchParams& p) {
    return std::make_tuple(p.window_size, p.max_matches, p.guard_dictionary,
                           p.guard_window);
}

bool better(const TrialResult& a, const TrialResult& b) {
    if (a.compressed_bytes != b.compressed_bytes) {
        return a.compressed_bytes < b.compressed_bytes;
    }
    return rank_key(a.params) < rank_key(b.params);
}

std::uint32_t env_thread_cap() {
    if (const char* env = std::getenv("X3_THREADS")) {
        const long v = std::strtol(env, nullptr, 10);
        if (v >= 1) {
            return static_cast<std::uint32_t>(v);
        }
    }
    return 0;
}

//! Search state for a single window size.
class WindowClimb {
  public:
    WindowClimb(ByteSpan input, std::uint32_t window, const SearchSpace& space,
                std::optional<Clock::time_point> deadline)
        : input_(input), window_(window), space_(space), deadline_(deadline) {}

    //! Runs the threshold climb plus the guard sweep; results land in
    //! trials() in evaluation order.
    void run() {
        const std::uint32_t anchor = anchor_matches(window_);
        const std::uint32_t cap = std::min<std::uint32_t>(
            std::max(window_ - 1, 1u), 4096);
        if (space_.exhaustive_matches) {
            const std::uint32_t hi = std::min(cap, std::max(4 * anchor, 8u));
            for (std::uint32_t m = 1; m <= hi && !expired(); ++m) {
                eval_matches(m);
            }
        } else {
            eval_matches(std::min(anchor, cap));
            std::uint32_t step = std::max(anchor / 2, 1u);
            while (!expired()) {
                const std::uint32_t at = best_->params.max_matches;
                bool improved = false;
                for (const std::int64_t cand :
                     {static_cast<std::int64_t>(at) - step,
                      static_cast<std::int64_t>(at) + step}) {
                    if (cand < 1 || cand > cap || expired()) {
                        continue;
                    }
                    improved |= eval_matches(static_cast<std::uint32_t>(cand));
                }
                if (!improved) {
                    if (step == 1) {
                        break;
                    }
                    step = std::max(step / 2, 1u);
                }
            }
        }
        for (const auto& [dict_guard, window_guard] : space_.guard_combos) {
            if (expired()) {
                break;
            }
            SearchParams p = base_params(best_->params.max_matches);
            p.guard_dictionary = dict_guard;
            p.guard_window = window_guard;
            eval(p);
        }
    }

    const std::vector<TrialResult>& trials() const { return trials_; }
    bool hit_deadline() const { return hit_deadline_; }

  private:
    SearchParams base_params(std::uint32_t matches) const {
        SearchParams p;
        p.window_size = window_;
        p.max_matches = matches;
        p.max_match_len = space_.max_match_len;
        // The climb runs under the space's leading guard combination; the
        // remaining combos are swept afterwards at the winning threshold.
        if (!space_.guard_combos.empty()) {
            p.guard_dictionary = space_.guard_combos.front().first;
            p.guard_window = space_.guard_combos.front().second;
        }
        return p;
    }

    bool expired() {
        if (deadline_ && Clock::now() >= *deadline_) {
            hit_deadline_ = true;
        }
        return hit_deadline_;
    }

    //! Returns true when the point improved the per-window best.
    bool eval_matches(std::uint32_t matches) { return eval(base_params(matches)); }

    bool eval(const SearchParams& p) {
        const auto key = rank_key(p);
        if (!seen_.insert(key).second) {
            return false;
        }
        trials_.push_back(evaluate_point(input_, p));
        if (!best_ || better(trials_.back(), *best_)) {
            best_ = trials_.back();
            return true;
        }
        return false;
    }

    ByteSpan input_;
    std::uint32_t window_;
    const SearchSpace& space_;
    std::optional<Clock::time_point> deadline_;
    std::vector<TrialResult> trials_;
    std::optional<TrialResult> best_;
    std::set<decltype(rank_key(SearchParams{}))> seen_;
    bool hit_deadline_ = false;
};

}  // namespace

std::uint32_t anchor_matches(std::uint32_t window_size) {
    // 28 matches at the 8 KiB default window, scaled linearly and rounded.
    const std::uint64_t scaled =
        (28ull * window_size + 4096) / 8192;
    return static_cast<std::uint32_t>(std::max<std::uint64_t>(scaled, 1));
}

TrialResult evaluate_point(ByteSpan input, const SearchParams& params) {
    TrialResult r;
    r.params = params;
    const auto start = Clock::now();
    const Bytes packed = compress(input, params);
    r.seconds = std::chrono::duration<double>(Clock::now() - start).count();
    r.compressed_bytes = packed.size();
    r.ratio = static_cast<double>(input.size()) / static_cast<double>(packed.size());
    return r;
}

OptimizeResult optimize(ByteSpan input, const SearchSpace& space) {
    std::optional<Clock::time_point> deadline;
    if (space.time_budget_seconds) {
        deadline = Clock::now() + std::chrono::duration_cast<Clock::duration>(
                                      std::chrono::duration<double>(
                                          *space.time_budget_seconds));
    }

    std::uint32_t threads = space.threads;
    if (threads == 0) {
        threads = std::max(std::thread::hardware_concurrency(), 1u);
        if (const std::uint32_t cap = env_thread_cap()) {
            threads = std::min(threads, cap);
        }
    }

    std::vector<WindowClimb> climbs;
    climbs.reserve(space.window_sizes.size());
    for (const std::uint32_t w : space.window_sizes) {
        climbs.emplace_back(input, w, space, deadline);
    }

    // Window climbs are independent; run them in batches of `threads`.
    // Aggregation below is in window order, so scheduling cannot change
    // the result.
    for (std::size_t i = 0; i < climbs.size(); i += threads) {
        const std::size_t batch_end = std::min(climbs.size(), i + threads);
        std::vector<std::future<void>> batch;
        for (std::size_t j = i + 1; j < batch_end; ++j) {
            batch.push_back(std::async(std::launch::async,
                                       [&climbs, j] { climbs[j].run(); }));
        }
        climbs[i].run();
        for (auto& f : batch) {
            f.get();
        }
    }

    OptimizeResult result;
    for (const WindowClimb& climb : climbs) {
        result.partial |= climb.hit_deadline();
        for (const TrialResult& t : climb.trials()) {
            result.trials.push_back(t);
            if (result.best.compressed_bytes == 0 || better(t, result.best)) {
                result.best = t;
            }
        }
    }
    if (result.trials.empty()) {
        // Degenerate spaces (no windows, or an expired budget before any
        // trial) still need a defined answer: the defaults.
        result.best = evaluate_point(input, SearchParams{});
        result.trials.push_back(result.best);
    }
    return result;
}

}  // namespace x3
