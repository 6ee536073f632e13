#pragma once

// Hyperplane-based construction of maximal partial line spreads of PG(5,q)
// with sizes q^3 + q^2 + k q + 1.
//
// Start from a partial spread F of size q^3 + 1 inside a hyperplane H (it
// leaves q^2 holes in H), cover each hole by a line through it that meets H
// only there, then repeatedly trade one line of F for q + 1 lines off H
// through its points. H stays fully covered throughout, so every stage is
// maximal.

#include <cstdint>
#include <span>
#include <vector>

#include "mps/certificate.hpp"
#include "mps/projgeom.hpp"
#include "mps/spread.hpp"

namespace mps {

/// Returns a line through x, not contained in h, that shares no point off h
/// with any blocker. Candidates are the lines joining x to the points off h,
/// scanned in point-id order; the first unblocked one is returned.
///
/// Requirements: fewer than q^3 blockers, x in h, every blocker meets h in a
/// single point other than x, and no two blockers meet off h. Violations
/// throw std::invalid_argument. Running out of candidates under valid input
/// throws std::logic_error.
Line lemma_line(const Geometry& geo, const Hyperplane& h, PointId x, std::span<const Line> blockers);

/// The hyperplane x_0 = 0. Its points carry the smallest ids and correspond
/// one-to-one, in order, to the points of PG(N-1,q).
Hyperplane construction_hyperplane(const Geometry& geo);

/// Maps a partial spread of PG(N-1,q) into the hyperplane x_0 = 0 of `geo`
/// by prefixing a zero coordinate. Lines are tagged LineOrigin::hyperplane.
PartialSpread embed_in_hyperplane(const Geometry& geo, const PartialSpread& lower);

/// F together with q^2 lines off h, one through each hole of F in h.
/// `seed` must consist of q^3 + 1 lines inside h.
PartialSpread cover_holes(const Geometry& geo, const Hyperplane& h, const PartialSpread& seed);

struct LadderState {
    LadderState(const Geometry& g, Hyperplane hp, PartialSpread s)
        : geo(&g), h(std::move(hp)), spread(std::move(s)) {}

    const Geometry* geo;
    Hyperplane h;
    PartialSpread spread;
    int k = 0;
    std::vector<Line> removed;
    std::size_t external_count = 0;
};

/// Runs cover_holes and returns the k = 0 state.
LadderState start_ladder(const Geometry& geo, const Hyperplane& h, const PartialSpread& seed);

/// Replaces the hyperplane line r by q + 1 lines off the hyperplane through
/// its points. The resulting spread is checked for hyperplane saturation and
/// maximality; a failure of either throws std::logic_error.
void ladder_step(LadderState& state, const Line& r, bool verify = true);

/// The least remaining hyperplane-resident member, if any.
std::optional<Line> least_hyperplane_line(const LadderState& state);

struct LadderOptions {
    bool random_removal = false;
    std::uint64_t rng_seed = 0;
    bool verify_each_step = true;
};

/// 0 <= k <= n_max(q). Returns the final ladder state.
LadderState run_ladder(const Geometry& geo, int k, const PartialSpread& seed,
                       const LadderOptions& opts = {});

/// run_ladder plus a final independent maximality check, packaged as a
/// certificate with provenance "ladder-<k>". `seed` is a partial spread in
/// the hyperplane x_0 = 0 of `geo`.
Certificate build_ladder(const Geometry& geo, int k, const PartialSpread& seed,
                         const LadderOptions& opts = {});

}  // namespace mps
