#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "x3/window_search.hpp"

namespace x3 {

//! One corpus file's outcome.  `factor` relates the codec's working-set
//! estimate to the input size (structure_bytes / size).
struct BenchRow {
    std::string name;
    std::uint64_t size = 0;
    std::uint64_t compressed = 0;
    double ratio = 0.0;
    double seconds = 0.0;
    std::uint64_t structure_bytes = 0;
    double factor = 0.0;
};

struct BenchReport {
    std::vector<BenchRow> rows;  //!< sorted by name
    BenchRow total;              //!< sums; ratio and factor recomputed from sums
};

//! External ratios for side-by-side display: column name -> (file -> ratio).
using ReferenceTable = std::map<std::string, std::map<std::string, double>>;

//! Compresses and roundtrip-verifies every regular file directly inside
//! `corpus_dir` (no recursion), with up to `threads` files in flight
//! (0 = hardware threads capped by X3_THREADS).  A verification mismatch
//! throws Error; rows come back sorted by file name.
BenchReport run_bench(const std::filesystem::path& corpus_dir,
                      const SearchParams& params = {}, std::uint32_t threads = 0);

//! Schema: name,size,compressed,ratio,seconds,structure_bytes,factor with
//! ratios fixed to four decimals.
void write_csv(std::ostream& out, const BenchReport& report);

//! Aligned table for humans; reference columns are joined by file name.
void write_table(std::ostream& out, const BenchReport& report,
                 const ReferenceTable& reference = {});

//! Parses a reference CSV: header "name,<col>,<col>,..." then one row per
//! file with numeric ratios.
ReferenceTable read_reference_csv(std::istream& in);

}  // namespace x3
