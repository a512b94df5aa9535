#include "x3/codec.hpp"

#include <chrono>
#include <stdexcept>

#include "x3/context_model.hpp"
#include "x3/dictionary.hpp"
#include "x3/range_coder.hpp"
#include "x3/varint.hpp"

namespace x3 {

namespace {

// Raw-fragment payloads ride on two dedicated adaptive tables with fixed
// alphabets, so the decoder needs no parameters: lengths use the full space
// the length cap can ever reach, bytes use the byte alphabet.
constexpr std::uint32_t kLenAlphabet = 4096;
constexpr std::uint32_t kByteAlphabet = 256;

void trace_event(EventTrace* trace, CtxClass cls, std::uint32_t symbol,
                 const SymbolRange& r, const FragmentDict& dict) {
    if (trace == nullptr) {
        return;
    }
    std::uint64_t h = trace->event_hashes.empty() ? kFnvOffsetBasis
                                                  : trace->event_hashes.back();
    h = fnv1a_word(static_cast<std::uint64_t>(cls), h);
    h = fnv1a_word(symbol, h);
    h = fnv1a_word((static_cast<std::uint64_t>(r.cum_lo) << 32) | r.cum_hi, h);
    h = fnv1a_word(r.total, h);
    h = fnv1a_word(dict.content_hash(), h);
    trace->event_hashes.push_back(h);
}

void trace_finish(EventTrace* trace, const ContextState& ctx, const FragmentDict& dict) {
    if (trace != nullptr) {
        trace->final_model_hash = ctx.state_hash();
        trace->final_dict_hash = dict.content_hash();
    }
}

}  // namespace

Bytes compress(ByteSpan input, const SearchParams& params, CompressStats* stats,
               EventTrace* trace) {
    validate(params);
    if (input.size() > kMaxInputBytes) {
        throw std::invalid_argument("compress: input larger than 2 GiB limit");
    }
    const auto start_time = std::chrono::steady_clock::now();

    Bytes out{kMagic0, kMagic1, kVersion};
    append_varint(out, input.size());

    RangeEncoder enc(out);
    FragmentDict dict;
    ContextState ctx;
    FreqTable len_table;
    FreqTable byte_table;
    WindowSearcher searcher(input, params);
    std::uint64_t dict_refs = 0;
    std::uint64_t raw_fragments = 0;

    const auto encode_with = [&](FreqTable& table, std::uint32_t symbol,
                                 std::uint32_t alphabet) {
        const SymbolRange r = table.symbol_range(symbol, alphabet);
        enc.encode(r.cum_lo, r.cum_hi, r.total);
        table.add(symbol);
    };

    std::size_t p = 0;
    while (p < input.size()) {
        const auto dict_match = dict.longest_match(input, p, input.size() - p);
        const std::uint32_t l_d = dict_match ? dict_match->length : 0;
        const std::uint32_t l_w = searcher.best_length(p, dict);

        const CtxClass cls = ctx.select();
        const std::uint32_t alphabet = dict.size() + 1;
        if (l_d >= l_w) {
            // Dictionary reference.  Ties go here too: the repeat candidate
            // is then itself a stored fragment, and re-adding it would
            // violate the dictionary's no-duplicates contract.
            const std::uint32_t symbol = dict_match->index;
            const SymbolRange r = ctx.symbol_range(cls, symbol, alphabet);
            enc.encode(r.cum_lo, r.cum_hi, r.total);
            trace_event(trace, cls, symbol, r, dict);
            ctx.record(symbol, alphabet);
            p += l_d;
            ++dict_refs;
        } else {
            // New fragment: escape symbol, then length and bytes on the
            // dedicated tables, then the dictionary grows by one.
            if (dict.size() >= kMaxFragments) {
                throw CapExceededError("compress: dictionary fragment cap exceeded");
            }
            const std::uint32_t symbol = dict.size();  // NEW
            const SymbolRange r = ctx.symbol_range(cls, symbol, alphabet);
            enc.encode(r.cum_lo, r.cum_hi, r.total);
            encode_with(len_table, l_w - 1, kLenAlphabet);
            for (std::uint32_t i = 0; i < l_w; ++i) {
                encode_with(byte_table, input[p + i], kByteAlphabet);
            }
            dict.add_fragment(input.subspan(p, l_w));
            trace_event(trace, cls, symbol, r, dict);
            ctx.record(symbol, alphabet);
            p += l_w;
            ++raw_fragments;
        }
    }
    enc.finish();
    trace_finish(trace, ctx, dict);

    if (stats != nullptr) {
        stats->input_bytes = input.size();
        stats->output_bytes = out.size();
        stats->dict_ref_events = dict_refs;
        stats->raw_fragment_events = raw_fragments;
        stats->dict_entries = dict.size();
        stats->dict_fragment_bytes = dict.fragment_bytes();
        stats->order1_instances = ctx.order1_instances();
        stats->order2_instances = ctx.order2_instances();
        stats->structure_bytes = dict.memory_bytes() + ctx.memory_bytes() +
                                 len_table.memory_bytes() + byte_table.memory_bytes();
        stats->ratio = out.empty() ? 0.0
                                   : static_cast<double>(input.size()) /
                                         static_cast<double>(out.size());
        stats->seconds = std::chrono::duration<double>(
                             std::chrono::steady_clock::now() - start_time)
                             .count();
    }
    return out;
}

Bytes decompress(ByteSpan container, EventTrace* trace) {
    if (container.size() < kHeaderBytes) {
        throw FormatError("decompress: container shorter than header");
    }
    if (container[0] != kMagic0 || container[1] != kMagic1) {
        throw FormatError("decompress: bad magic");
    }
    if (container[2] != kVersion) {
        throw FormatError("decompress: unsupported version");
    }
    const VarintResult length = read_varint(container.subspan(kHeaderBytes));
    const std::uint64_t original_length = length.value;
    if (original_length >= (1ull << 62)) {
        throw CorruptError("decompress: declared length out of range");
    }

    const ByteSpan payload = container.subspan(kHeaderBytes + length.length);
    RangeDecoder dec(payload);
    FragmentDict dict;
    ContextState ctx;
    FreqTable len_table;
    FreqTable byte_table;

    const auto decode_with = [&](FreqTable& table, std::uint32_t alphabet) {
        const std::uint32_t total = table.effective_total(alphabet);
        const std::uint32_t target = dec.decode_target(total);
        const std::uint32_t symbol = table.find_symbol(target, alphabet);
        const SymbolRange r = table.symbol_range(symbol, alphabet);
        dec.confirm(r.cum_lo, r.cum_hi, r.total);
        table.add(symbol);
        return symbol;
    };

    Bytes out;
    out.reserve(static_cast<std::size_t>(
        std::min<std::uint64_t>(original_length, 1u << 20)));
    Bytes fragment;
    while (out.size() < original_length) {
        const CtxClass cls = ctx.select();
        const std::uint32_t alphabet = dict.size() + 1;
        const std::uint32_t target = dec.decode_target(ctx.effective_total(cls, alphabet));
        const std::uint32_t symbol = ctx.find_symbol(cls, target, alphabet);
        const SymbolRange r = ctx.symbol_range(cls, symbol, alphabet);
        dec.confirm(r.cum_lo, r.cum_hi, r.total);

        if (symbol == dict.size()) {
            // NEW: length, bytes, then the same dictionary append the
            // encoder performed.
            const std::uint32_t len = decode_with(len_table, kLenAlphabet) + 1;
            if (len > original_length - out.size()) {
                throw CorruptError("decompress: fragment overruns declared length");
            }
            fragment.clear();
            for (std::uint32_t i = 0; i < len; ++i) {
                fragment.push_back(
                    static_cast<std::uint8_t>(decode_with(byte_table, kByteAlphabet)));
            }
            if (dict.size() >= kMaxFragments) {
                throw CorruptError("decompress: dictionary fragment cap exceeded");
            }
            if (dict.contains(fragment)) {
                throw CorruptError("decompress: duplicate fragment in stream");
            }
            dict.add_fragment(fragment);
            out.insert(out.end(), fragment.begin(), fragment.end());
        } else {
            const ByteSpan frag = dict.get_fragment(symbol);
            if (frag.size() > original_length - out.size()) {
                throw CorruptError("decompress: fragment overruns declared length");
            }
            out.insert(out.end(), frag.begin(), frag.end());
        }
        trace_event(trace, cls, symbol, r, dict);
        ctx.record(symbol, alphabet);
    }
    // The encoder emits exactly the bytes the decoder consumes, so any
    // shortfall, surplus, or slack-zero read marks a damaged container.
    if (dec.bytes_consumed() != payload.size() || dec.overrun() != 0) {
        throw CorruptError("decompress: stream length mismatch");
    }
    trace_finish(trace, ctx, dict);
    return out;
}

}  // namespace x3
