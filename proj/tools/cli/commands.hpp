#pragma once

// Subcommands of the mpsl tool. Each returns a process exit code and writes
// human-readable output to `out`, diagnostics to `err`.

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>

#include "mps/bounds.hpp"
#include "mps/searcher.hpp"

namespace mps::cli {

enum ExitCode : int {
    kOk = 0,            // verified maximal / command succeeded
    kSearchFailed = 1,  // budget exhausted
    kExtendable = 2,    // valid partial spread, but not maximal
    kInvalid = 3,       // malformed file or skewness violation
    kUsage = 4,
};

struct ConstructOptions {
    int q = 2;
    int k = 0;
    std::string out_path;                    // empty: do not write
    std::optional<std::uint64_t> rng_seed;   // randomizes the removal order
};

struct SearchOptions {
    int q = 2;
    std::size_t target = 0;
    std::uint64_t rng_seed = 1;
    Budget budget = Budget::ci;
    int jobs = 1;
    std::string out_path;
};

struct SpectrumOptions {
    int q = 2;
    Budget budget = Budget::ci;
    std::uint64_t rng_seed = 1;
    int jobs = 1;
    std::string out_dir;                     // empty: summary only
};

int cmd_construct(const ConstructOptions& opt, std::ostream& out, std::ostream& err);
int cmd_verify(const std::string& path, std::ostream& out, std::ostream& err);
int cmd_search(const SearchOptions& opt, std::ostream& out, std::ostream& err);
int cmd_spectrum(const SpectrumOptions& opt, std::ostream& out, std::ostream& err);

/// One q, or the whole table when q is empty. `csv` switches to
/// comma-separated rows.
int cmd_bounds(std::optional<int> q, bool csv, std::ostream& out, std::ostream& err);

/// The "min | δ≥d | ≤max | upper | spread" row.
std::string bounds_row_text(const BoundsRow& b);

/// Parses argv and dispatches.
int run(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace mps::cli
