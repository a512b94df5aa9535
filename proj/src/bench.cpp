#include "x3/bench.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <future>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <thread>

#include "x3/codec.hpp"
#include "x3/error.hpp"

namespace x3 {

namespace {

Bytes read_file_bytes(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError("bench: cannot open " + path.string());
    }
    Bytes data((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    if (in.bad()) {
        throw IoError("bench: read failed for " + path.string());
    }
    return data;
}

std::uint32_t resolve_threads(std::uint32_t requested) {
    if (requested != 0) {
        return requested;
    }
    std::uint32_t threads = std::max(std::thread::hardware_concurrency(), 1u);
    if (const char* env = std::getenv("X3_THREADS")) {
        const long v = std::strtol(env, nullptr, 10);
        if (v >= 1) {
            threads = std::min<std::uint32_t>(threads, static_cast<std::uint32_t>(v));
        }
    }
    return threads;
}

BenchRow bench_one(const std::filesystem::path& path, const SearchParams& params) {
    const Bytes data = read_file_bytes(path);
    CompressStats stats;
    const Bytes packed = compress(data, params, &stats);
    const Bytes unpacked = decompress(packed);
    if (unpacked != data) {
        throw Error("bench: roundtrip mismatch on " + path.string());
    }
    BenchRow row;
    row.name = path.filename().string();
    row.size = data.size();
    row.compressed = packed.size();
    row.ratio = stats.ratio;
    row.seconds = stats.seconds;
    row.structure_bytes = stats.structure_bytes;
    row.factor = data.empty() ? 0.0
                              : static_cast<double>(stats.structure_bytes) /
                                    static_cast<double>(data.size());
    return row;
}

}  // namespace

BenchReport run_bench(const std::filesystem::path& corpus_dir,
                      const SearchParams& params, std::uint32_t threads) {
    validate(params);
    if (!std::filesystem::is_directory(corpus_dir)) {
        throw IoError("bench: not a directory: " + corpus_dir.string());
    }
    std::vector<std::filesystem::path> files;
    for (const auto& entry : std::filesystem::directory_iterator(corpus_dir)) {
        if (entry.is_regular_file()) {
            files.push_back(entry.path());
        }
    }
    std::sort(files.begin(), files.end());

    const std::uint32_t workers = resolve_threads(threads);
    BenchReport report;
    report.rows.resize(files.size());
    for (std::size_t i = 0; i < files.size(); i += workers) {
        const std::size_t batch_end = std::min(files.size(), i + workers);
        std::vector<std::future<BenchRow>> batch;
        for (std::size_t j = i + 1; j < batch_end; ++j) {
            batch.push_back(std::async(std::launch::async, bench_one, files[j],
                                       params));
        }
        report.rows[i] = bench_one(files[i], params);
        for (std::size_t j = i + 1; j < batch_end; ++j) {
            report.rows[j] = batch[j - i - 1].get();
        }
    }

    report.total.name = "TOTAL";
    for (const BenchRow& row : report.rows) {
        report.total.size += row.size;
        report.total.compressed += row.compressed;
        report.total.seconds += row.seconds;
        report.total.structure_bytes += row.structure_bytes;
    }
    if (report.total.compressed != 0) {
        report.total.ratio = static_cast<double>(report.total.size) /
                             static_cast<double>(report.total.compressed);
    }
    if (report.total.size != 0) {
        report.total.factor = static_cast<double>(report.total.structure_bytes) /
                              static_cast<double>(report.total.size);
    }
    return report;
}

void write_csv(std::ostream& out, const BenchReport& report) {
    const auto line = [&out](const BenchRow& row) {
        out << row.name << ',' << row.size << ',' << row.compressed << ','
            << std::fixed << std::setprecision(4) << row.ratio << ','
            << std::setprecision(3) << row.seconds << ','
            << std::defaultfloat << row.structure_bytes << ','
            << std::fixed << std::setprecision(4) << row.factor << '\n'
            << std::defaultfloat;
    };
    out << "name,size,compressed,ratio,seconds,structure_bytes,factor\n";
    for (const BenchRow& row : report.rows) {
        line(row);
    }
    line(report.total);
}

void write_table(std::ostream& out, const BenchReport& report,
                 const ReferenceTable& reference) {
    const auto line = [&out](const BenchRow& row, const ReferenceTable& ref) {
        out << std::left << std::setw(16) << row.name << std::right
            << std::setw(12) << row.size << std::setw(12) << row.compressed
            << std::setw(10) << std::fixed << std::setprecision(4) << row.ratio
            << std::setw(10) << std::setprecision(3) << row.seconds
            << std::setw(8) << std::setprecision(1) << row.factor;
        for (const auto& [col, values] : ref) {
            const auto it = values.find(row.name);
            if (it != values.end()) {
                out << std::setw(10) << std::setprecision(4) << it->second;
            } else {
                out << std::setw(10) << "-";
            }
        }
        out << std::defaultfloat << '\n';
    };

    out << std::left << std::setw(16) << "name" << std::right << std::setw(12)
        << "size" << std::setw(12) << "compressed" << std::setw(10) << "ratio"
        << std::setw(10) << "seconds" << std::setw(8) << "factor";
    for (const auto& [col, values] : reference) {
        out << std::setw(10) << col;
    }
    out << '\n';
    for (const BenchRow& row : report.rows) {
        line(row, reference);
    }
    line(report.total, {});
}

ReferenceTable read_reference_csv(std::istream& in) {
    ReferenceTable table;
    std::string header;
    if (!std::getline(in, header)) {
        return table;
    }
    std::vector<std::string> columns;
    std::stringstream hs(header);
    std::string cell;
    while (std::getline(hs, cell, ',')) {
        columns.push_back(cell);
    }
    if (columns.empty() || columns[0] != "name") {
        throw Error("reference csv: first column must be 'name'");
    }
    std::string row;
    while (std::getline(in, row)) {
        if (row.empty()) {
            continue;
        }
        std::stringstream rs(row);
        std::string name;
        std::getline(rs, name, ',');
        for (std::size_t i = 1; i < columns.size() && std::getline(rs, cell, ','); ++i) {
            try {
                table[columns[i]][name] = std::stod(cell);
            } catch (const std::exception&) {
                throw Error("reference csv: bad number in row for " + name);
            }
        }
    }
    return table;
}

}  // namespace x3
