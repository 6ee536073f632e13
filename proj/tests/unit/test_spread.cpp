#include <doctest.h>

#include "mps/builder.hpp"
#include "mps/searcher.hpp"
#include "mps/spread.hpp"
#include "oracles.hpp"

using namespace mps;

TEST_SUITE("spread") {

TEST_CASE("insert and conflicts") {
    const Geometry g = Geometry::make(2, 5);
    PartialSpread s(g);
    const Line l12 = g.line_span(g.point_of(std::vector<Elem>{1, 0, 0, 0, 0, 0}),
                                 g.point_of(std::vector<Elem>{0, 1, 0, 0, 0, 0}));
    const Line l34 = g.line_span(g.point_of(std::vector<Elem>{0, 0, 1, 0, 0, 0}),
                                 g.point_of(std::vector<Elem>{0, 0, 0, 1, 0, 0}));
    s.insert(l12);
    CHECK(s.size() == 1);
    CHECK(s.covered_count() == 3);

    try {
        s.insert(l12);
        FAIL("expected conflict");
    } catch (const SpreadConflict& e) {
        CHECK(l12.contains(e.blocking_point()));
    }
    CHECK(s.size() == 1);

    s.insert(l34);
    CHECK(s.size() == 2);
    CHECK(s.covered_count() == 6);
    CHECK(s.hole_count() == 57);

    CHECK(s.remove(l12));
    CHECK_FALSE(s.remove(l12));
    CHECK(s.size() == 1);
    CHECK(s.covered_count() == 3);
    CHECK(s.can_insert(l12));
}

TEST_CASE("holes") {
    const Geometry g = Geometry::make(2, 5);
    PartialSpread empty(g);
    CHECK(holes(empty).size() == 63);

    const PartialSpread full = desarguesian_spread(g);
    CHECK(full.size() == 21);
    CHECK(holes(full).empty());

    // A size q^3+1 spread of a hyperplane leaves q^2 holes in it.
    for (int q : {2, 3}) {
        const Geometry g5 = Geometry::make(q, 5);
        const Geometry g4 = Geometry::make(q, 4);
        const PartialSpread f = embed_in_hyperplane(g5, algebraic_pg4_mps(g4));
        const Hyperplane h = construction_hyperplane(g5);
        CHECK(holes(f, &h).size() == static_cast<std::size_t>(q * q));
        CHECK(holes(f).size() == g5.num_points() - f.size() * (q + 1));
    }
}

TEST_CASE("is_maximal examples") {
    const Geometry g = Geometry::make(2, 5);
    PartialSpread full = desarguesian_spread(g);
    CHECK(is_maximal(full).maximal);

    const Line removed = full.lines()[7];
    full.remove_at(7);
    const MaximalityVerdict v = is_maximal(full);
    REQUIRE_FALSE(v.maximal);
    CHECK(*v.witness == removed);

    const Geometry g4 = Geometry::make(2, 4);
    const PartialSpread seed = embed_in_hyperplane(g, algebraic_pg4_mps(g4));
    const Certificate c = build_ladder(g, 0, seed);
    PartialSpread s13(g);
    for (const auto& l : c.lines) s13.insert(l);
    CHECK(s13.size() == 13);
    CHECK(is_maximal(s13).maximal);
}

TEST_CASE("witness is the least all-hole line") {
    const Geometry g = Geometry::make(3, 5);
    std::mt19937_64 rng(77);
    for (int t = 0; t < 10; ++t) {
        const PartialSpread s = oracle::random_partial_spread(g, 40, rng);
        std::optional<Line> least;
        for (const auto& l : g.lines()) {
            if (s.can_insert(l)) {
                least = l;
                break;
            }
        }
        const MaximalityVerdict v = is_maximal(s);
        CHECK(v.maximal == !least.has_value());
        if (least) CHECK(*v.witness == *least);
    }
}

TEST_CASE("hole_lines matches the brute-force filter") {
    const Geometry g = Geometry::make(3, 5);
    std::mt19937_64 rng(5);
    for (int t = 0; t < 5; ++t) {
        const PartialSpread s = oracle::random_partial_spread(g, 30 + 10 * t, rng);
        std::vector<Line> ref;
        for (const auto& l : g.lines())
            if (s.can_insert(l)) ref.push_back(l);
        CHECK(hole_lines(s) == ref);
    }
}

TEST_CASE("verifier agrees with the all-lines oracle") {
    std::mt19937_64 rng(2024);
    const Geometry g2 = Geometry::make(2, 5);
    for (int t = 0; t < 50; ++t) {
        std::uniform_int_distribution<std::size_t> sz(1, 21);
        const PartialSpread s = oracle::random_partial_spread(g2, sz(rng), rng);
        const MaximalityVerdict v = is_maximal(s);
        CHECK(v.maximal == oracle::is_maximal_all_lines(s));
        if (!v.maximal) {
            PartialSpread ext = s;
            CHECK_NOTHROW(ext.insert(*v.witness));
        }
    }
    const Geometry g3 = Geometry::make(3, 5);
    for (int t = 0; t < 20; ++t) {
        std::uniform_int_distribution<std::size_t> sz(20, 91);
        const PartialSpread s = oracle::random_partial_spread(g3, sz(rng), rng);
        CHECK(is_maximal(s).maximal == oracle::is_maximal_all_lines(s));
    }
}

TEST_CASE("saturation implies maximality") {
    const Geometry g = Geometry::make(3, 5);
    const Hyperplane h = construction_hyperplane(g);
    PartialSpread empty(g);
    CHECK_FALSE(hyperplane_saturated(empty, h));

    const Geometry g4 = Geometry::make(3, 4);
    const PartialSpread seed = embed_in_hyperplane(g, algebraic_pg4_mps(g4));
    CHECK_FALSE(hyperplane_saturated(seed, h));
    const PartialSpread s = cover_holes(g, h, seed);
    CHECK(hyperplane_saturated(s, h));
    CHECK(is_maximal(s).maximal);

    std::mt19937_64 rng(9);
    for (int t = 0; t < 20; ++t) {
        const PartialSpread r = oracle::random_partial_spread(g, 91, rng);
        const Hyperplane hr = g.hyperplane(oracle::random_covector(g, rng));
        if (hyperplane_saturated(r, hr)) CHECK(is_maximal(r).maximal);
        CHECK(r.covered_count() == r.size() * 4);
    }
}

TEST_CASE("deficiency") {
    const Geometry g2 = Geometry::make(2, 5);
    PartialSpread s2 = desarguesian_spread(g2);
    s2.remove_indices({0, 1});
    DeficiencyReport d = deficiency(s2);
    CHECK(d.size == 19);
    CHECK(d.deficiency == 2);
    CHECK_FALSE(d.maximal);

    const Geometry g4 = Geometry::make(4, 5);
    PartialSpread s4 = desarguesian_spread(g4);
    s4.remove_indices({0, 1, 2});
    CHECK(deficiency(s4).size == 270);
    CHECK(deficiency(s4).deficiency == 3);

    const Geometry g5 = Geometry::make(5, 5);
    const PartialSpread s5 = desarguesian_spread(g5);
    d = deficiency(s5);
    CHECK(d.size == 651);
    CHECK(d.deficiency == 0);
    CHECK(d.maximal);
    CHECK_FALSE(d.inside_forbidden_gap);

    CHECK_THROWS_AS(deficiency(PartialSpread(Geometry::make(2, 4))), std::invalid_argument);
}

}  // TEST_SUITE
