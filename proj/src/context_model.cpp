#include "x3/context_model.hpp"

#include <algorithm>

#include "x3/bytes.hpp"

namespace x3 {

namespace {

std::uint64_t pack_pair(std::uint32_t h2, std::uint32_t h1) {
    return (static_cast<std::uint64_t>(h2) << 32) | h1;
}

const FreqTable& empty_table() {
    static const FreqTable table;
    return table;
}

}  // namespace

const ContextState::ModelSlot* ContextState::slot(CtxClass cls) const {
    switch (cls) {
        case CtxClass::kOrder2: {
            const auto it = order2_ids_.find(pack_pair(h2_, h1_));
            return it == order2_ids_.end() ? nullptr : &order2_[it->second];
        }
        case CtxClass::kOrder1: {
            const auto it = order1_ids_.find(h1_);
            return it == order1_ids_.end() ? nullptr : &order1_[it->second];
        }
        case CtxClass::kOrder0:
            return &order0_;
    }
    return nullptr;
}

ContextState::ModelSlot& ContextState::ensure_slot(CtxClass cls) {
    switch (cls) {
        case CtxClass::kOrder2: {
            const auto [it, fresh] = order2_ids_.try_emplace(
                pack_pair(h2_, h1_), static_cast<std::uint32_t>(order2_.size()));
            if (fresh) {
                order2_.emplace_back();
            }
            return order2_[it->second];
        }
        case CtxClass::kOrder1: {
            const auto [it, fresh] = order1_ids_.try_emplace(
                h1_, static_cast<std::uint32_t>(order1_.size()));
            if (fresh) {
                order1_.emplace_back();
            }
            return order1_[it->second];
        }
        case CtxClass::kOrder0:
        default:
            return order0_;
    }
}

const FreqTable& ContextState::table_for(CtxClass cls) const {
    const ModelSlot* s = slot(cls);
    return s != nullptr ? s->table : empty_table();
}

CtxClass ContextState::select() const {
    // Score each class as the exact fraction sel_bits / sel_uses, or the
    // fixed prior when the instance has no history; keep the first minimum
    // in class order, so ties fall to the more specific context.
    CtxClass best = CtxClass::kOrder2;
    std::uint64_t best_num = 0;
    std::uint64_t best_den = 1;
    for (const CtxClass cls :
         {CtxClass::kOrder2, CtxClass::kOrder1, CtxClass::kOrder0}) {
        const ModelSlot* s = slot(cls);
        std::uint64_t num =
            kPriorUnits[std::min<std::size_t>(static_cast<std::size_t>(cls), 2)];
        std::uint64_t den = 1;
        if (s != nullptr && s->sel_uses != 0) {
            num = s->sel_bits;
            den = s->sel_uses;
        }
        if (cls == CtxClass::kOrder2) {
            best_num = num;
            best_den = den;
            continue;
        }
        const auto lhs = static_cast<unsigned __int128>(num) * best_den;
        const auto rhs = static_cast<unsigned __int128>(best_num) * den;
        if (lhs < rhs) {
            best = cls;
            best_num = num;
            best_den = den;
        }
    }
    return best;
}

SymbolRange ContextState::symbol_range(CtxClass cls, std::uint32_t symbol,
                                       std::uint32_t alphabet) const {
    return table_for(cls).symbol_range(symbol, alphabet);
}

std::uint32_t ContextState::effective_total(CtxClass cls, std::uint32_t alphabet) const {
    return table_for(cls).effective_total(alphabet);
}

std::uint32_t ContextState::find_symbol(CtxClass cls, std::uint32_t target,
                                        std::uint32_t alphabet) const {
    return table_for(cls).find_symbol(target, alphabet);
}

void ContextState::record(std::uint32_t symbol, std::uint32_t alphabet) {
    ModelSlot* slots[3] = {&ensure_slot(CtxClass::kOrder2),
                           &ensure_slot(CtxClass::kOrder1), &order0_};
    for (ModelSlot* s : slots) {
        s->sel_bits += s->table.code_length_units(symbol, alphabet);
        s->sel_uses += 1;
    }
    for (ModelSlot* s : slots) {
        s->table.add(symbol);
    }
    h2_ = h1_;
    h1_ = symbol;
}

std::uint64_t ContextState::memory_bytes() const {
    std::uint64_t total = sizeof(*this);
    const auto slot_bytes = [](const ModelSlot& s) {
        return sizeof(ModelSlot) - sizeof(FreqTable) + s.table.memory_bytes();
    };
    total += slot_bytes(order0_);
    for (const ModelSlot& s : order1_) {
        total += slot_bytes(s);
    }
    for (const ModelSlot& s : order2_) {
        total += slot_bytes(s);
    }
    // Hash-map overhead: key, value, and a pointer-sized bucket link each.
    total += order1_ids_.size() * (sizeof(std::uint32_t) * 2 + sizeof(void*) * 2);
    total += order2_ids_.size() * (sizeof(std::uint64_t) + sizeof(std::uint32_t) + sizeof(void*) * 2);
    return total;
}

std::uint64_t ContextState::state_hash() const {
    std::uint64_t h = fnv1a_word(pack_pair(h2_, h1_), kFnvOffsetBasis);
    const auto mix_slot = [&h](const ModelSlot& s) {
        h = fnv1a_word(s.sel_bits, h);
        h = fnv1a_word(s.sel_uses, h);
        h = s.table.state_hash(h);
    };
    mix_slot(order0_);
    h = fnv1a_word(order1_.size(), h);
    for (const ModelSlot& s : order1_) {
        mix_slot(s);
    }
    h = fnv1a_word(order2_.size(), h);
    for (const ModelSlot& s : order2_) {
        mix_slot(s);
    }
    return h;
}

}  // namespace x3
