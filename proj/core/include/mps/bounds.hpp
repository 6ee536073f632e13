#pragma once

// Reference size bounds for maximal partial line spreads of PG(5,q).

#include <cstddef>
#include <optional>
#include <vector>

namespace mps {

struct BoundsRow {
    int q = 0;
    std::size_t min_size = 0;     // q^3 + q^2 + 1
    int epsilon = 0;              // smallest nontrivial blocking set of PG(2,q) has q + epsilon points
    int delta_min = 0;            // deficiency lower bound for non-spreads
    std::size_t max_size = 0;     // spread_size - delta_min
    std::size_t upper_interval = 0;  // spread_size - q + 1, top of the asymptotic existence interval
    double lower_interval = 0.0;  // 9 N q^(N-2) ln q at N = 5
    double modified_low_ln = 0.0;  // 2 q^3 ln q
    double modified_low_log2 = 0.0;  // 2 q^3 log2 q
    std::size_t spread_size = 0;
    int ladder_k_max = 0;         // floor((q^3 - q^2) / (q + 1))
    int search_k_max = 0;         // largest k reported from computer search
    std::optional<int> largest_deficiency;  // reported for q <= 5
};

/// q in {2, 3, 4, 5, 7}.
bool bounds_supported(int q) noexcept;

/// Throws std::invalid_argument for unsupported q.
BoundsRow bounds(int q);

std::vector<BoundsRow> bounds_table();

/// floor((q^3 - q^2) / (q + 1)), the number of ladder steps available.
int n_max(int q);

/// True when size = spread_size - delta with 0 < delta < delta_min(q).
bool size_excluded_by_bounds(int q, std::size_t size);

}  // namespace mps
