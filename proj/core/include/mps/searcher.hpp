#pragma once

// Randomized search for maximal partial line spreads: greedy completion,
// remove-t / refill local search toward a target size, and a size-spectrum
// sweep that combines search with the hyperplane ladder.

#include <atomic>
#include <chrono>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "mps/certificate.hpp"
#include "mps/projgeom.hpp"
#include "mps/spread.hpp"

namespace mps {

using Rng = std::mt19937_64;

enum class Budget { ci, long_run };

struct SearchConfig {
    std::uint64_t rng_seed = 1;
    int restarts = 4;
    long max_steps = 20000;       // perturbations per restart
    int removal_width = 3;        // lines removed per perturbation
    std::optional<std::size_t> target_size;
    double time_budget_s = 0.0;   // wall clock per call, 0 = unlimited
    const std::atomic<bool>* cancel = nullptr;  // polled between perturbations

    /// Throws std::invalid_argument unless every count is positive.
    void validate() const;

    /// Presets tuned per field order.
    static SearchConfig preset(Budget budget, int q);
};

/// Thrown when a search exhausts its budget.
class SearchFailure : public std::runtime_error {
public:
    SearchFailure(std::size_t best, const std::string& what) : std::runtime_error(what), best_(best) {}
    std::size_t best_size() const noexcept { return best_; }

private:
    std::size_t best_;
};

/// Adds uniformly random all-hole lines until none is left. Returns the
/// number of lines added; the result is maximal.
std::size_t greedy_complete(PartialSpread& s, Rng& rng);

/// Removes `count` distinct members chosen uniformly at random.
void remove_random_lines(PartialSpread& s, std::size_t count, Rng& rng);

struct SearchResult {
    bool success = false;
    PartialSpread spread;        // the target spread on success, else the closest found
    std::size_t steps = 0;
    std::size_t restarts_used = 0;
};

/// Called with every maximal spread the search produces.
using SpreadObserver = std::function<void(const PartialSpread&)>;

/// Iterated perturbation from a maximal spread: remove removal_width random
/// lines, refill greedily, keep the move if the size gets strictly closer to
/// target (equal distance: keep with probability 1/2). Each restart starts
/// again from `start`. A success is re-verified before it is returned.
SearchResult local_search_resize(const PartialSpread& start, std::size_t target, const SearchConfig& cfg,
                                 const SpreadObserver& observer = {});

/// Partial spread of PG(4,q) of size q^3 + 1 (q^2 holes) found by greedy
/// restarts plus local search. Throws SearchFailure with the best size when
/// the budget runs out. `pg4` must be PG(4,q).
PartialSpread seed_pg4_mps(const Geometry& pg4, std::uint64_t rng_seed, const SearchConfig& cfg);

/// Deterministic partial spread of PG(4,q) of size q^3 + 1: the q^3 lines
/// joining (1,0,b) and (0,1,Mb) for b in GF(q)^3, with M the companion matrix
/// of an irreducible cubic, plus one line of the plane x_0 = x_1 = 0.
PartialSpread algebraic_pg4_mps(const Geometry& pg4);

/// Desarguesian line spread of PG(N,q), N odd: the GF(q^2)-points of
/// GF(q^2)^((N+1)/2) read as lines over GF(q).
PartialSpread desarguesian_spread(const Geometry& geo);

struct SpectrumEntry {
    enum class Source { ladder, search, spread };
    std::size_t size = 0;
    Source source = Source::search;
    Certificate certificate;
    double seconds = 0.0;
};

struct SpectrumReport {
    int q = 0;
    std::map<std::size_t, SpectrumEntry> achieved;
    std::vector<std::size_t> missed;
    std::vector<std::size_t> excluded;  // refused by the deficiency bound
};

const char* to_string(SpectrumEntry::Source s) noexcept;

/// Sweeps sizes from q^3 + q^2 + 1 to the spread size in PG(5,q). Ladder
/// sizes come from the builder, the spread size from the Desarguesian
/// spread, everything else from local search started at the closest
/// certified spread. Every recorded spread has been re-verified. `jobs`
/// workers split the search targets round-robin.
SpectrumReport spectrum_scan(const Geometry& geo, const SearchConfig& cfg, int jobs = 1);

}  // namespace mps
