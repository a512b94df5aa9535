#pragma once

#include <cstdint>
#include <unordered_map>
#include <utility>
#include <vector>

#include "x3/freq_table.hpp"

namespace x3 {

//! Model classes, in tie-break preference order (lower wins ties).
enum class CtxClass : std::uint8_t {
    kOrder2 = 0,  //!< keyed by the last two coded indexes
    kOrder1 = 1,  //!< keyed by the last coded index
    kOrder0 = 2,  //!< single shared instance
};

// Adaptive context machinery for the event-symbol stream.
//
// Each event codes one symbol from the alphabet {0..N-1, NEW} where N is the
// current dictionary size and NEW (value N) announces a fresh fragment.  The
// codec asks select() which class to code under, codes the symbol with that
// class's table, then calls record(), which
//   * charges every class its counterfactual code-length estimate for the
//     symbol (from the pre-update tables) into per-instance selection stats,
//   * bumps the symbol's count in all three tables, rescaling as needed,
//   * shifts the history: h2 <- h1, h1 <- the symbol's index value.
//
// Selection picks the class whose instance has the smallest mean estimate
// sel_bits / sel_uses, compared exactly by cross multiplication.  Instances
// that never coded anything score a fixed prior — two bits for the order-2
// and order-1 classes, six bits for order-0 — which is what biases early
// decisions toward the specific contexts.  Ties prefer order-2, then
// order-1.  Everything here is integer arithmetic, so encoder and decoder
// make identical choices on every platform.
class ContextState {
  public:
    //! History value before anything was coded.
    static constexpr std::uint32_t kStartHistory = 0xFFFFFFFFu;

    //! Unused-instance priors, in sixteenths of a bit (2.0 / 2.0 / 6.0).
    static constexpr std::uint64_t kPriorUnits[3] = {32, 32, 96};

    CtxClass select() const;

    SymbolRange symbol_range(CtxClass cls, std::uint32_t symbol,
                             std::uint32_t alphabet) const;
    std::uint32_t effective_total(CtxClass cls, std::uint32_t alphabet) const;
    std::uint32_t find_symbol(CtxClass cls, std::uint32_t target,
                              std::uint32_t alphabet) const;

    //! Post-symbol bookkeeping; `symbol` is the coded value (index or NEW).
    void record(std::uint32_t symbol, std::uint32_t alphabet);

    std::pair<std::uint32_t, std::uint32_t> history() const { return {h2_, h1_}; }
    std::uint64_t order1_instances() const { return order1_.size(); }
    std::uint64_t order2_instances() const { return order2_.size(); }
    std::uint64_t memory_bytes() const;
    std::uint64_t state_hash() const;

  private:
    struct ModelSlot {
        FreqTable table;
        std::uint64_t sel_bits = 0;  //!< sum of charged estimates, 1/16-bit units
        std::uint64_t sel_uses = 0;
    };

    const ModelSlot* slot(CtxClass cls) const;
    ModelSlot& ensure_slot(CtxClass cls);
    const FreqTable& table_for(CtxClass cls) const;

    ModelSlot order0_;
    std::unordered_map<std::uint32_t, std::uint32_t> order1_ids_;
    std::vector<ModelSlot> order1_;
    std::unordered_map<std::uint64_t, std::uint32_t> order2_ids_;
    std::vector<ModelSlot> order2_;
    std::uint32_t h2_ = kStartHistory;
    std::uint32_t h1_ = kStartHistory;
};

}  // namespace x3
