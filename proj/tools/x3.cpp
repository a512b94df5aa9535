// Command-line front end: compress, decompress, corpus benchmark, and the
// per-file parameter search.

#include <CLI11.hpp>

#include <chrono>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "x3/bench.hpp"
#include "x3/codec.hpp"
#include "x3/error.hpp"
#include "x3/optimizer.hpp"

namespace {

// Exit codes: 0 success, 1 usage (CLI11), then one code per failure family.
constexpr int kExitIo = 2;
constexpr int kExitCorrupt = 3;
constexpr int kExitCap = 4;
constexpr int kExitInternal = 5;

x3::Bytes read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw x3::IoError("cannot open " + path);
    }
    x3::Bytes data((std::istreambuf_iterator<char>(in)),
                   std::istreambuf_iterator<char>());
    if (in.bad()) {
        throw x3::IoError("read failed: " + path);
    }
    return data;
}

void write_file(const std::string& path, const x3::Bytes& data) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw x3::IoError("cannot create " + path);
    }
    out.write(reinterpret_cast<const char*>(data.data()),
              static_cast<std::streamsize>(data.size()));
    if (!out) {
        throw x3::IoError("write failed: " + path);
    }
}

void write_stats_json(const std::string& path, const x3::CompressStats& stats) {
    nlohmann::json j{{"input_bytes", stats.input_bytes},
                     {"output_bytes", stats.output_bytes},
                     {"ratio", stats.ratio},
                     {"seconds", stats.seconds},
                     {"dict_ref_events", stats.dict_ref_events},
                     {"raw_fragment_events", stats.raw_fragment_events},
                     {"dict_entries", stats.dict_entries},
                     {"dict_fragment_bytes", stats.dict_fragment_bytes},
                     {"order1_instances", stats.order1_instances},
                     {"order2_instances", stats.order2_instances},
                     {"structure_bytes", stats.structure_bytes}};
    std::ofstream out(path, std::ios::trunc);
    if (!out) {
        throw x3::IoError("cannot create " + path);
    }
    out << j.dump(2) << '\n';
}

struct ParamFlags {
    std::uint32_t window = 8192;
    std::uint32_t max_matches = 28;
    std::uint32_t max_len = 64;
    std::string guard_dict = "on";
    std::string guard_window = "off";

    x3::SearchParams to_params() const {
        x3::SearchParams p;
        p.window_size = window;
        p.max_matches = max_matches;
        p.max_match_len = max_len;
        p.guard_dictionary = guard_dict == "on";
        p.guard_window = guard_window == "on";
        return p;
    }
};

void add_param_flags(CLI::App* cmd, ParamFlags& flags) {
    cmd->add_option("--window", flags.window, "Search window size in bytes")
        ->check(CLI::Range(1u, 0x7FFFFFFFu))
        ->capture_default_str();
    cmd->add_option("--max-matches", flags.max_matches,
                    "Occurrence threshold sweep bound")
        ->check(CLI::Range(1u, 4096u))
        ->capture_default_str();
    cmd->add_option("--max-len", flags.max_len, "Fragment length cap")
        ->check(CLI::Range(1u, 4096u))
        ->capture_default_str();
    cmd->add_option("--guard-dict", flags.guard_dict,
                    "Truncate candidates that hide a long dictionary match")
        ->check(CLI::IsMember({"on", "off"}))
        ->capture_default_str();
    cmd->add_option("--guard-window", flags.guard_window,
                    "Truncate candidates that hide a long window repeat")
        ->check(CLI::IsMember({"on", "off"}))
        ->capture_default_str();
}

int run(int argc, char** argv) {
    CLI::App app{"x3: fragment-dictionary compressor"};
    app.require_subcommand(1);

    // ---- compress ----
    std::string c_input;
    std::string c_output;
    std::string c_stats;
    ParamFlags c_flags;
    CLI::App* cmd_c = app.add_subcommand("compress", "Compress a file")->alias("c");
    cmd_c->add_option("input", c_input, "File to compress")->required();
    cmd_c->add_option("output", c_output, "Compressed output path")->required();
    add_param_flags(cmd_c, c_flags);
    cmd_c->add_option("--stats", c_stats, "Write a JSON stats report here");

    // ---- decompress ----
    std::string d_input;
    std::string d_output;
    CLI::App* cmd_d =
        app.add_subcommand("decompress", "Decompress a container")->alias("d");
    cmd_d->add_option("input", d_input, "Container to decompress")->required();
    cmd_d->add_option("output", d_output, "Decompressed output path")->required();

    // ---- bench ----
    std::string b_dir;
    std::string b_csv;
    std::string b_reference;
    ParamFlags b_flags;
    CLI::App* cmd_b =
        app.add_subcommand("bench", "Compress every file in a corpus directory");
    cmd_b->add_option("corpus", b_dir, "Directory of corpus files")->required();
    add_param_flags(cmd_b, b_flags);
    cmd_b->add_option("--csv", b_csv, "Also write the report as CSV here");
    cmd_b->add_option("--reference", b_reference,
                      "Reference ratio CSV to display beside the results");

    // ---- opt ----
    std::string o_input;
    std::string o_apply;
    std::string o_log;
    std::vector<std::uint32_t> o_windows;
    double o_budget = 0.0;
    bool o_exhaustive = false;
    CLI::App* cmd_o =
        app.add_subcommand("opt", "Search compression parameters for one file");
    cmd_o->add_option("input", o_input, "File to tune on")->required();
    cmd_o->add_option("--windows", o_windows,
                      "Window sizes to sweep, in bytes (default 1..64 KiB doublings)")
        ->delimiter(',');
    cmd_o->add_option("--budget", o_budget, "Wall-clock budget in seconds");
    cmd_o->add_flag("--exhaustive", o_exhaustive,
                    "Sweep every match threshold instead of hill climbing");
    cmd_o->add_option("--apply", o_apply,
                      "Compress with the winning parameters into this file");
    cmd_o->add_option("--log", o_log, "Write the trial log as CSV here");

    CLI11_PARSE(app, argc, argv);

    if (cmd_c->parsed()) {
        const x3::Bytes input = read_file(c_input);
        x3::CompressStats stats;
        const x3::Bytes packed = x3::compress(input, c_flags.to_params(), &stats);
        write_file(c_output, packed);
        std::printf("%s: %llu -> %llu bytes (ratio %.4f) in %.3fs\n",
                    c_input.c_str(),
                    static_cast<unsigned long long>(stats.input_bytes),
                    static_cast<unsigned long long>(stats.output_bytes),
                    stats.ratio, stats.seconds);
        if (!c_stats.empty()) {
            write_stats_json(c_stats, stats);
        }
        return 0;
    }

    if (cmd_d->parsed()) {
        const x3::Bytes container = read_file(d_input);
        const auto start = std::chrono::steady_clock::now();
        const x3::Bytes output = x3::decompress(container);
        const double seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
                .count();
        write_file(d_output, output);
        std::printf("%s: %zu -> %zu bytes in %.3fs\n", d_input.c_str(),
                    container.size(), output.size(), seconds);
        return 0;
    }

    if (cmd_b->parsed()) {
        x3::ReferenceTable reference;
        if (!b_reference.empty()) {
            std::ifstream ref(b_reference);
            if (!ref) {
                throw x3::IoError("cannot open " + b_reference);
            }
            reference = x3::read_reference_csv(ref);
        }
        const x3::BenchReport report = x3::run_bench(b_dir, b_flags.to_params());
        x3::write_table(std::cout, report, reference);
        if (!b_csv.empty()) {
            std::ofstream csv(b_csv, std::ios::trunc);
            if (!csv) {
                throw x3::IoError("cannot create " + b_csv);
            }
            x3::write_csv(csv, report);
        }
        return 0;
    }

    const x3::Bytes input = read_file(o_input);
    x3::SearchSpace space;
    if (!o_windows.empty()) {
        space.window_sizes = o_windows;
    }
    if (o_budget > 0.0) {
        space.time_budget_seconds = o_budget;
    }
    space.exhaustive_matches = o_exhaustive;
    const x3::OptimizeResult result = x3::optimize(input, space);

    const x3::SearchParams& best = result.best.params;
    std::printf("%zu trials%s; best: window %u, max-matches %u, guard-dict %s, "
                "guard-window %s -> %llu bytes (ratio %.4f)\n",
                result.trials.size(), result.partial ? " (budget hit)" : "",
                best.window_size, best.max_matches,
                best.guard_dictionary ? "on" : "off",
                best.guard_window ? "on" : "off",
                static_cast<unsigned long long>(result.best.compressed_bytes),
                result.best.ratio);
    if (!o_log.empty()) {
        std::ofstream log(o_log, std::ios::trunc);
        if (!log) {
            throw x3::IoError("cannot create " + o_log);
        }
        log << "window,max_matches,guard_dict,guard_window,compressed,ratio,seconds\n";
        for (const x3::TrialResult& t : result.trials) {
            char line[160];
            std::snprintf(line, sizeof(line), "%u,%u,%d,%d,%llu,%.4f,%.3f\n",
                          t.params.window_size, t.params.max_matches,
                          t.params.guard_dictionary ? 1 : 0,
                          t.params.guard_window ? 1 : 0,
                          static_cast<unsigned long long>(t.compressed_bytes),
                          t.ratio, t.seconds);
            log << line;
        }
    }
    if (!o_apply.empty()) {
        write_file(o_apply, x3::compress(input, best));
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const x3::CapExceededError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitCap;
    } catch (const x3::FormatError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitCorrupt;
    } catch (const x3::CorruptError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitCorrupt;
    } catch (const x3::IoError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitIo;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitInternal;
    }
}
