#include <doctest.h>

#include "mps/bounds.hpp"
#include "mps/builder.hpp"
#include "mps/searcher.hpp"
#include "oracles.hpp"

using namespace mps;

namespace {

PartialSpread seed_for(const Geometry& g) {
    const Geometry g4 = Geometry::make(g.q(), 4);
    return embed_in_hyperplane(g, algebraic_pg4_mps(g4));
}

std::size_t ladder_size(int q, int k) { return static_cast<std::size_t>(q * q * q + q * q + k * q + 1); }

}  // namespace

TEST_SUITE("builder") {

TEST_CASE("lemma_line with no blockers returns the first candidate") {
    const Geometry g = Geometry::make(2, 5);
    const Hyperplane h = construction_hyperplane(g);
    for (PointId x : h.points()) {
        const auto cands = oracle::lines_through_off(g, h, x);
        CHECK(cands.size() == 16);
        PointId first_off = 0;
        while (h.contains(first_off)) ++first_off;
        const Line l = lemma_line(g, h, x, {});
        CHECK(l == Line::from_points(oracle::span(g, x, first_off)));
        CHECK(std::find(cands.begin(), cands.end(), l) != cands.end());
    }
}

TEST_CASE("lemma_line precondition errors") {
    const Geometry g = Geometry::make(2, 5);
    const Hyperplane h = construction_hyperplane(g);
    const PointId x = h.points()[3];
    const PointId off = 40;
    REQUIRE_FALSE(h.contains(off));
    const Line through_x = g.line_span(x, off);
    CHECK_THROWS_AS(lemma_line(g, h, x, std::vector<Line>{through_x}), std::invalid_argument);
    CHECK_THROWS_AS(lemma_line(g, h, off, {}), std::invalid_argument);

    const Line inside = g.line_span(h.points()[0], h.points()[1]);
    CHECK_THROWS_AS(lemma_line(g, h, h.points()[5], std::vector<Line>{inside}), std::invalid_argument);

    std::mt19937_64 rng(1);
    auto many = oracle::random_blockers(g, h, x, 8, rng);
    if (many.size() == 8) CHECK_THROWS_AS(lemma_line(g, h, x, many), std::invalid_argument);

    // Two blockers sharing a point off the hyperplane.
    PointId y = h.points()[10], z = h.points()[11];
    if (y == x) y = h.points()[12];
    if (z == x) z = h.points()[13];
    const std::vector<Line> meeting{g.line_span(y, off), g.line_span(z, off)};
    CHECK_THROWS_AS(lemma_line(g, h, x, meeting), std::invalid_argument);
}

TEST_CASE("lemma_line randomized against brute force") {
    for (int q : {2, 3}) {
        const Geometry g = Geometry::make(q, 5);
        std::mt19937_64 rng(100 + q);
        int failures = 0;
        for (int t = 0; t < 200; ++t) {
            const Hyperplane h = g.hyperplane(oracle::random_covector(g, rng));
            std::uniform_int_distribution<std::size_t> px(0, h.size() - 1);
            const PointId x = h.points()[px(rng)];
            std::uniform_int_distribution<std::size_t> nl(0, static_cast<std::size_t>(q * q * q - 1));
            const auto blockers = oracle::random_blockers(g, h, x, nl(rng), rng);
            const Line l = lemma_line(g, h, x, blockers);

            std::vector<Line> valid;
            for (const auto& c : oracle::lines_through_off(g, h, x)) {
                const bool ok = std::all_of(blockers.begin(), blockers.end(),
                                            [&](const Line& b) { return oracle::disjoint_off(h, c, b); });
                if (ok) valid.push_back(c);
            }
            const bool good = !valid.empty() && std::find(valid.begin(), valid.end(), l) != valid.end() &&
                              l.contains(x) && h.meet(l) == x &&
                              std::all_of(blockers.begin(), blockers.end(),
                                          [&](const Line& b) { return lines_skew(l, b); });
            failures += !good;
        }
        CHECK(failures == 0);
    }
}

TEST_CASE("cover_holes reaches q^3 + q^2 + 1") {
    for (int q : {2, 3}) {
        const Geometry g = Geometry::make(q, 5);
        const Hyperplane h = construction_hyperplane(g);
        const PartialSpread seed = seed_for(g);
        const PartialSpread s = cover_holes(g, h, seed);
        CHECK(s.size() == ladder_size(q, 0));
        CHECK(hyperplane_saturated(s, h));
        CHECK(is_maximal(s).maximal);
        CHECK(oracle::is_maximal_all_lines(s));
        std::size_t external = 0;
        for (std::size_t i = 0; i < s.size(); ++i) {
            if (s.origins()[i] != LineOrigin::external) continue;
            ++external;
            CHECK(h.classify(s.lines()[i]) == Hyperplane::Position::meets_once);
        }
        CHECK(external == static_cast<std::size_t>(q * q));
    }
}

TEST_CASE("cover_holes rejects bad seeds") {
    const Geometry g = Geometry::make(2, 5);
    const Hyperplane h = construction_hyperplane(g);
    PartialSpread seed = seed_for(g);
    seed.remove_at(0);
    CHECK_THROWS_AS(cover_holes(g, h, seed), std::invalid_argument);
    PartialSpread outside(g);
    const PartialSpread full = desarguesian_spread(g);
    for (std::size_t i = 0; i < 9; ++i) outside.insert(full.lines()[i]);
    CHECK_THROWS_AS(cover_holes(g, h, outside), std::invalid_argument);
}

TEST_CASE("ladder steps grow by q and keep H saturated") {
    const int q = 3;
    const Geometry g = Geometry::make(q, 5);
    const Hyperplane h = construction_hyperplane(g);
    LadderState st = start_ladder(g, h, seed_for(g));
    CHECK(st.spread.size() == 37);
    const std::size_t expected[] = {40, 43, 46, 49};
    for (std::size_t size : expected) {
        const Line r = *least_hyperplane_line(st);
        ladder_step(st, r);
        CHECK(st.spread.size() == size);
        CHECK(st.spread.covered_count() == (q + 1) * st.spread.size());
        CHECK(hyperplane_saturated(st.spread, h));
        CHECK(is_maximal(st.spread).maximal);
        CHECK(st.external_count == static_cast<std::size_t>(q * q + st.k * (q + 1)));

        // The q+1 lines of this step meet H exactly in the points of r.
        std::vector<PointId> meets;
        const std::size_t n = st.spread.size();
        for (std::size_t i = n - (q + 1); i < n; ++i) meets.push_back(h.meet(st.spread.lines()[i]));
        std::sort(meets.begin(), meets.end());
        CHECK(std::equal(meets.begin(), meets.end(), r.points().begin(), r.points().end()));
    }
    CHECK(st.k == 4);
    CHECK(st.removed.size() == 4);
    // External budget exhausted for this step size: 9 + 4*4 + 4 = 29 > 27.
    CHECK_THROWS_AS(ladder_step(st, *least_hyperplane_line(st)), std::invalid_argument);
}

TEST_CASE("ladder_step rejects lines that are not hyperplane members") {
    const Geometry g = Geometry::make(2, 5);
    LadderState st = start_ladder(g, construction_hyperplane(g), seed_for(g));
    for (std::size_t i = 0; i < st.spread.size(); ++i) {
        if (st.spread.origins()[i] == LineOrigin::external) {
            CHECK_THROWS_AS(ladder_step(st, st.spread.lines()[i]), std::invalid_argument);
            break;
        }
    }
    CHECK_THROWS_AS(ladder_step(st, g.line_span(0, 40)), std::invalid_argument);
}

TEST_CASE("build_ladder sizes") {
    const Geometry g2 = Geometry::make(2, 5);
    const PartialSpread s2 = seed_for(g2);
    CHECK(build_ladder(g2, 0, s2).lines.size() == 13);
    CHECK(build_ladder(g2, 1, s2).lines.size() == 15);
    CHECK_THROWS_AS(build_ladder(g2, 2, s2), std::invalid_argument);
    CHECK_THROWS_AS(build_ladder(g2, -1, s2), std::invalid_argument);

    const Geometry g3 = Geometry::make(3, 5);
    const Certificate c = build_ladder(g3, 4, seed_for(g3));
    CHECK(c.lines.size() == 49);
    CHECK(c.provenance == "ladder-4");
}

TEST_CASE("build_ladder is deterministic and supports random removal") {
    const Geometry g = Geometry::make(3, 5);
    const PartialSpread seed = seed_for(g);
    const std::string a = certificate_text(g, build_ladder(g, 3, seed));
    const std::string b = certificate_text(g, build_ladder(g, 3, seed));
    CHECK(a == b);

    LadderOptions lo;
    lo.random_removal = true;
    lo.rng_seed = 42;
    const Certificate r1 = build_ladder(g, 4, seed, lo);
    const Certificate r2 = build_ladder(g, 4, seed, lo);
    CHECK(r1.lines == r2.lines);
    CHECK(r1.lines.size() == 49);
    CHECK(r1.rng_seed == 42u);
}

TEST_CASE("ladder from a searched seed") {
    const Geometry g4 = Geometry::make(2, 4);
    const Geometry g5 = Geometry::make(2, 5);
    const PartialSpread found = seed_pg4_mps(g4, 3, SearchConfig::preset(Budget::ci, 2));
    const Certificate c = build_ladder(g5, 1, embed_in_hyperplane(g5, found));
    CHECK(c.lines.size() == 15);
}

}  // TEST_SUITE
