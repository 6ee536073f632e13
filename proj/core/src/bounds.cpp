#include "mps/bounds.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace mps {
namespace {

struct Known {
    int q;
    int epsilon;
    int search_k_max;
    int largest_deficiency;  // 0 when not reported
};

// epsilon: 2 for q = 2, otherwise |smallest nontrivial blocking set| - q
// (Baer subplane q + sqrt(q) + 1 for q = 4, 3(q+1)/2 for odd primes).
constexpr Known kKnown[] = {
    {2, 2, 3, 2},
    {3, 3, 12, 3},
    {4, 3, 28, 3},
    {5, 4, 59, 4},
    {7, 5, 163, 0},
};

const Known* find_known(int q) {
    for (const auto& k : kKnown)
        if (k.q == q) return &k;
    return nullptr;
}

int delta_lower_bound(int q) {
    if (q == 2) return 2;
    const int r = static_cast<int>(std::lround(std::sqrt(static_cast<double>(q))));
    if (r * r == q) return r + 1;
    // Remaining supported orders are odd primes.
    return (q + 3) / 2;
}

}  // namespace

bool bounds_supported(int q) noexcept { return find_known(q) != nullptr; }

int n_max(int q) {
    if (q < 2) throw std::invalid_argument("n_max needs q >= 2");
    return (q * q * q - q * q) / (q + 1);
}

BoundsRow bounds(int q) {
    const Known* k = find_known(q);
    if (!k) throw std::invalid_argument("no bounds row for q=" + std::to_string(q) +
                                        " (supported: 2, 3, 4, 5, 7)");
    const std::size_t uq = static_cast<std::size_t>(q);
    const double dq = q;
    BoundsRow r;
    r.q = q;
    r.min_size = uq * uq * uq + uq * uq + 1;
    r.epsilon = k->epsilon;
    r.delta_min = delta_lower_bound(q);
    r.spread_size = (uq * uq * uq * uq * uq * uq - 1) / (uq * uq - 1);
    r.max_size = r.spread_size - static_cast<std::size_t>(r.delta_min);
    r.upper_interval = r.spread_size - uq + 1;
    r.lower_interval = 9.0 * 5.0 * dq * dq * dq * std::log(dq);
    r.modified_low_ln = 2.0 * dq * dq * dq * std::log(dq);
    r.modified_low_log2 = 2.0 * dq * dq * dq * std::log2(dq);
    r.ladder_k_max = n_max(q);
    r.search_k_max = k->search_k_max;
    if (k->largest_deficiency > 0) r.largest_deficiency = k->largest_deficiency;
    return r;
}

std::vector<BoundsRow> bounds_table() {
    std::vector<BoundsRow> rows;
    for (const auto& k : kKnown) rows.push_back(bounds(k.q));
    return rows;
}

bool size_excluded_by_bounds(int q, std::size_t size) {
    const BoundsRow b = bounds(q);
    if (size >= b.spread_size) return false;
    const std::size_t delta = b.spread_size - size;
    return delta > 0 && delta < static_cast<std::size_t>(b.delta_min);
}

}  // namespace mps
