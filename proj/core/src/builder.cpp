#include "mps/builder.hpp"

#include <random>
#include <stdexcept>
#include <string>

#include "mps/bounds.hpp"

namespace mps {
namespace {

std::size_t cube(int q) { return static_cast<std::size_t>(q) * q * q; }

}  // namespace

Line lemma_line(const Geometry& geo, const Hyperplane& h, PointId x, std::span<const Line> blockers) {
    const int q = geo.q();
    if (blockers.size() >= cube(q))
        throw std::invalid_argument("lemma_line: " + std::to_string(blockers.size()) +
                                    " blockers, need fewer than q^3 = " + std::to_string(cube(q)));
    if (x >= geo.num_points() || !h.contains(x))
        throw std::invalid_argument("lemma_line: point " + std::to_string(x) + " is not on the hyperplane");

    // blocked[p] marks points off h already used by a blocker.
    std::vector<std::uint8_t> blocked(geo.num_points(), 0);
    for (std::size_t i = 0; i < blockers.size(); ++i) {
        const Line& l = blockers[i];
        if (h.classify(l) == Hyperplane::Position::contained)
            throw std::invalid_argument("lemma_line: blocker " + std::to_string(i) + " lies in the hyperplane");
        if (l.contains(x))
            throw std::invalid_argument("lemma_line: blocker " + std::to_string(i) + " passes through X=" +
                                        std::to_string(x));
        for (PointId p : l.points()) {
            if (h.contains(p)) continue;
            if (blocked[p])
                throw std::invalid_argument("lemma_line: blockers meet off the hyperplane at point " +
                                            std::to_string(p));
            blocked[p] = 1;
        }
    }

    std::vector<std::uint8_t> seen(geo.num_points(), 0);
    std::array<PointId, kMaxLinePoints> buf{};
    for (PointId p = 0; p < geo.num_points(); ++p) {
        if (h.contains(p) || seen[p]) continue;
        const std::size_t n = geo.span_points(x, p, buf.data());
        bool free = true;
        for (std::size_t k = 0; k < n; ++k) {
            seen[buf[k]] = 1;
            if (blocked[buf[k]]) free = false;
        }
        if (free) return Line::from_points({buf.data(), n});
    }
    throw std::logic_error("lemma_line: no unblocked line through X=" + std::to_string(x) +
                           " although the preconditions hold");
}

Hyperplane construction_hyperplane(const Geometry& geo) {
    std::vector<Elem> c(geo.vector_length(), 0);
    c[0] = 1;
    return geo.hyperplane(c);
}

PartialSpread embed_in_hyperplane(const Geometry& geo, const PartialSpread& lower) {
    const Geometry& lg = lower.geometry();
    if (lg.q() != geo.q() || lg.dimension() + 1 != geo.dimension())
        throw std::invalid_argument("embed_in_hyperplane: expected a spread of PG(N-1,q)");
    PartialSpread out(geo);
    std::vector<Elem> v(geo.vector_length(), 0);
    std::vector<PointId> pts;
    for (const auto& l : lower.lines()) {
        pts.clear();
        for (PointId p : l.points()) {
            auto c = lg.coords(p);
            std::copy(c.begin(), c.end(), v.begin() + 1);
            pts.push_back(geo.point_of(v));
        }
        out.insert(Line::from_points(pts), LineOrigin::hyperplane);
    }
    return out;
}

PartialSpread cover_holes(const Geometry& geo, const Hyperplane& h, const PartialSpread& seed) {
    const int q = geo.q();
    if (geo.dimension() != 5) throw std::invalid_argument("cover_holes works in PG(5,q)");
    if (&seed.geometry() != &geo) throw std::invalid_argument("cover_holes: seed belongs to another geometry");
    if (seed.size() != cube(q) + 1)
        throw std::invalid_argument("cover_holes: seed has " + std::to_string(seed.size()) +
                                    " lines, expected q^3+1 = " + std::to_string(cube(q) + 1));
    for (const auto& l : seed.lines())
        if (h.classify(l) != Hyperplane::Position::contained)
            throw std::invalid_argument("cover_holes: seed line not contained in the hyperplane");
    const std::vector<PointId> hs = holes(seed, &h);
    if (hs.size() != static_cast<std::size_t>(q) * q)
        throw std::invalid_argument("cover_holes: seed leaves " + std::to_string(hs.size()) +
                                    " holes in the hyperplane, expected q^2");

    PartialSpread out(geo);
    for (const auto& l : seed.lines()) out.insert(l, LineOrigin::hyperplane);
    std::vector<Line> external;
    for (PointId x : hs) {
        Line l = lemma_line(geo, h, x, external);
        try {
            out.insert(l, LineOrigin::external);
        } catch (const SpreadConflict& e) {
            throw std::logic_error(std::string("cover_holes: lemma line conflicts with spread: ") + e.what());
        }
        external.push_back(l);
    }
    if (!hyperplane_saturated(out, h)) throw std::logic_error("cover_holes: hyperplane not saturated");
    return out;
}

LadderState start_ladder(const Geometry& geo, const Hyperplane& h, const PartialSpread& seed) {
    LadderState st(geo, h, cover_holes(geo, h, seed));
    st.external_count = static_cast<std::size_t>(geo.q()) * geo.q();
    return st;
}

void ladder_step(LadderState& st, const Line& r, bool verify) {
    const Geometry& geo = *st.geo;
    const int q = geo.q();
    const auto idx = st.spread.index_of(r);
    if (!idx || st.spread.origins()[*idx] != LineOrigin::hyperplane)
        throw std::invalid_argument("ladder_step: line is not a hyperplane-resident member");
    if (st.external_count + static_cast<std::size_t>(q) + 1 > cube(q))
        throw std::invalid_argument("ladder_step: budget exceeded, " + std::to_string(st.external_count) +
                                    " external lines + " + std::to_string(q + 1) + " > q^3");

    std::vector<Line> external;
    for (std::size_t i = 0; i < st.spread.size(); ++i)
        if (st.spread.origins()[i] == LineOrigin::external) external.push_back(st.spread.lines()[i]);
    if (external.size() != st.external_count)
        throw std::logic_error("ladder_step: external line count out of sync");

    st.spread.remove_at(*idx);
    for (PointId x : r.points()) {
        if (external.size() >= cube(q))
            throw std::logic_error("ladder_step: lemma budget violated before call");
        Line l = lemma_line(geo, st.h, x, external);
        try {
            st.spread.insert(l, LineOrigin::external);
        } catch (const SpreadConflict& e) {
            throw std::logic_error(std::string("ladder_step: lemma line conflicts with spread: ") + e.what());
        }
        external.push_back(l);
    }
    st.external_count = external.size();
    st.removed.push_back(r);
    ++st.k;

    if (st.spread.covered_count() != st.spread.size() * geo.points_per_line())
        throw std::logic_error("ladder_step: covered count out of sync");
    if (!hyperplane_saturated(st.spread, st.h))
        throw std::logic_error("ladder_step: hyperplane no longer saturated");
    if (verify && !is_maximal(st.spread).maximal)
        throw std::logic_error("ladder_step: result is not maximal");
}

std::optional<Line> least_hyperplane_line(const LadderState& st) {
    std::optional<Line> best;
    for (std::size_t i = 0; i < st.spread.size(); ++i) {
        if (st.spread.origins()[i] != LineOrigin::hyperplane) continue;
        const Line& l = st.spread.lines()[i];
        if (!best || l < *best) best = l;
    }
    return best;
}

LadderState run_ladder(const Geometry& geo, int k, const PartialSpread& seed, const LadderOptions& opts) {
    const int q = geo.q();
    if (k < 0 || k > n_max(q))
        throw std::invalid_argument("ladder k=" + std::to_string(k) + " out of range 0.." +
                                    std::to_string(n_max(q)) + " for q=" + std::to_string(q));
    const Hyperplane h = construction_hyperplane(geo);
    LadderState st = start_ladder(geo, h, seed);
    std::mt19937_64 rng(opts.rng_seed);
    for (int i = 0; i < k; ++i) {
        Line r;
        if (opts.random_removal) {
            std::vector<std::size_t> resident;
            for (std::size_t j = 0; j < st.spread.size(); ++j)
                if (st.spread.origins()[j] == LineOrigin::hyperplane) resident.push_back(j);
            std::uniform_int_distribution<std::size_t> pick(0, resident.size() - 1);
            r = st.spread.lines()[resident[pick(rng)]];
        } else {
            r = *least_hyperplane_line(st);
        }
        ladder_step(st, r, opts.verify_each_step);
    }
    return st;
}

Certificate build_ladder(const Geometry& geo, int k, const PartialSpread& seed, const LadderOptions& opts) {
    LadderState st = run_ladder(geo, k, seed, opts);
    const std::size_t q = static_cast<std::size_t>(geo.q());
    const std::size_t expected = q * q * q + q * q + static_cast<std::size_t>(k) * q + 1;
    if (st.spread.size() != expected) throw std::logic_error("build_ladder: unexpected size");
    if (!opts.verify_each_step || k == 0) {
        if (!is_maximal(st.spread).maximal) throw std::logic_error("build_ladder: result is not maximal");
    }
    return make_certificate(st.spread, "ladder-" + std::to_string(k),
                            opts.random_removal ? std::optional<std::uint64_t>(opts.rng_seed) : std::nullopt);
}

}  // namespace mps
