#include <doctest.h>

#include <map>

#include "mps/projgeom.hpp"
#include "oracles.hpp"

using namespace mps;

namespace {

PointId pt(const Geometry& g, std::vector<Elem> v) { return g.point_of(v); }

}  // namespace

TEST_SUITE("projgeom") {

TEST_CASE("normalize_point") {
    const Field f3 = Field::make(3);
    CHECK(normalize_point(f3, std::vector<Elem>{0, 2, 1, 0, 0, 0}) == std::vector<Elem>{0, 1, 2, 0, 0, 0});

    const Field f2 = Field::make(2);
    const std::vector<Elem> v{0, 1, 1, 0, 1, 0};
    CHECK(normalize_point(f2, v) == v);

    const Field f4 = Field::make(4);
    CHECK(normalize_point(f4, std::vector<Elem>{2, 2, 0, 0, 0, 0}) == std::vector<Elem>{1, 1, 0, 0, 0, 0});

    CHECK_THROWS_AS(normalize_point(f3, std::vector<Elem>(6, 0)), std::invalid_argument);

    // Idempotent, and equal for projectively equivalent vectors.
    const std::vector<Elem> w{0, 3, 1, 4, 0, 2};
    const Field f5 = Field::make(5);
    const auto n = normalize_point(f5, w);
    CHECK(normalize_point(f5, n) == n);
    for (int s = 1; s < 5; ++s) {
        std::vector<Elem> sw(w.size());
        for (std::size_t i = 0; i < w.size(); ++i) sw[i] = f5.mul(static_cast<Elem>(s), w[i]);
        CHECK(normalize_point(f5, sw) == n);
    }
}

TEST_CASE("counts match closed formulas and pair counting") {
    const Geometry g25 = Geometry::make(2, 5);
    CHECK(g25.num_points() == 63);
    CHECK(g25.num_lines() == 651);
    CHECK(g25.lines().size() == 651);
    CHECK(oracle::line_count_by_pairs(63, 2) == 651);

    const Geometry g35 = Geometry::make(3, 5);
    CHECK(g35.num_points() == 364);
    CHECK(g35.num_lines() == 11011);
    CHECK(g35.lines().size() == 11011);
    CHECK(oracle::line_count_by_pairs(364, 3) == 11011);

    const Geometry g24 = Geometry::make(2, 4);
    CHECK(g24.num_points() == 31);
    CHECK(g24.num_points() == 9 * 3 + 4);

    CHECK(counts(2, 5).spread_size == 21);
    CHECK(counts(5, 5).spread_size == 651);
    CHECK(counts(7, 5).spread_size == 2451);
    CHECK(counts(2, 4).spread_size == 0);

    for (int q : {2, 3, 4, 5})
        for (int n : {2, 3, 4}) {
            const Geometry g = Geometry::make(q, n);
            CHECK(g.num_points() == counts(q, n).points);
            CHECK(g.lines().size() == counts(q, n).lines);
            CHECK(oracle::line_count_by_pairs(g.num_points(), q) == counts(q, n).lines);
        }
}

TEST_CASE("unsupported geometries are rejected") {
    CHECK_THROWS_AS(Geometry::make(6, 5), std::invalid_argument);
    CHECK_THROWS_AS(Geometry::make(2, 1), std::invalid_argument);
    CHECK_THROWS_AS(Geometry::make(2, 6), std::invalid_argument);
}

TEST_CASE("points are numbered in lexicographic order of normalized vectors") {
    const Geometry g = Geometry::make(3, 5);
    for (PointId p = 0; p + 1 < g.num_points(); ++p) {
        auto a = g.coords(p), b = g.coords(p + 1);
        CHECK(std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end()));
    }
    for (PointId p = 0; p < g.num_points(); ++p) {
        auto c = g.coords(p);
        auto lead = std::find_if(c.begin(), c.end(), [](Elem x) { return x != 0; });
        CHECK(*lead == 1);
        CHECK(g.point_of(c) == p);
    }
    CHECK(pt(g, {0, 0, 0, 0, 0, 1}) == 0);
}

TEST_CASE("line_span examples") {
    const Geometry g2 = Geometry::make(2, 5);
    const PointId a = pt(g2, {1, 0, 0, 0, 0, 0}), b = pt(g2, {0, 1, 0, 0, 0, 0});
    const Line l = g2.line_span(a, b);
    CHECK(l.size() == 3);
    CHECK(l.contains(a));
    CHECK(l.contains(b));
    CHECK(l.contains(pt(g2, {1, 1, 0, 0, 0, 0})));
    CHECK(g2.line_span(b, a) == l);

    const Geometry g3 = Geometry::make(3, 5);
    const PointId a3 = pt(g3, {1, 0, 0, 0, 0, 0}), b3 = pt(g3, {0, 1, 0, 0, 0, 0});
    const Line l3 = g3.line_span(a3, b3);
    CHECK(l3.size() == 4);
    CHECK(l3.contains(pt(g3, {1, 1, 0, 0, 0, 0})));
    CHECK(l3.contains(pt(g3, {1, 2, 0, 0, 0, 0})));

    CHECK_THROWS_AS(g2.line_span(a, a), std::invalid_argument);
}

TEST_CASE("line_span agrees with the brute-force span") {
    for (int q : {2, 3, 4}) {
        const Geometry g = Geometry::make(q, 4);
        std::mt19937_64 rng(11 + q);
        std::uniform_int_distribution<PointId> d(0, static_cast<PointId>(g.num_points() - 1));
        for (int t = 0; t < 200; ++t) {
            PointId a = d(rng), b = d(rng);
            if (a == b) continue;
            const Line l = g.line_span(a, b);
            const auto ref = oracle::span(g, a, b);
            CHECK(std::equal(ref.begin(), ref.end(), l.points().begin(), l.points().end()));
            CHECK(g.line_span(b, a) == l);
        }
    }
}

TEST_CASE("any two points of a line span the same line") {
    for (int q : {2, 3}) {
        const Geometry g = Geometry::make(q, 5);
        bool ok = true;
        for (const auto& l : g.lines()) {
            ok &= l.size() == static_cast<std::size_t>(q) + 1;
            ok &= std::is_sorted(l.points().begin(), l.points().end());
            for (std::size_t i = 0; i < l.size(); ++i)
                for (std::size_t j = i + 1; j < l.size(); ++j) ok &= g.line_span(l[i], l[j]) == l;
        }
        CHECK(ok);
        // Canonical order and uniqueness.
        CHECK(std::adjacent_find(g.lines().begin(), g.lines().end(),
                                 [](const Line& x, const Line& y) { return !(x < y); }) == g.lines().end());
    }
}

TEST_CASE("each point of PG(5,2) lies on 31 lines") {
    const Geometry g = Geometry::make(2, 5);
    std::vector<int> deg(g.num_points(), 0);
    for (const auto& l : g.lines())
        for (auto p : l.points()) ++deg[p];
    CHECK(std::all_of(deg.begin(), deg.end(), [](int d) { return d == 31; }));
    CHECK(g.lines_through(5).size() == 31);
    for (const auto& l : g.lines_through(5)) CHECK(l.contains(5));
}

TEST_CASE("streamed and materialized enumerations agree") {
    const Geometry a = Geometry::make(3, 5, Geometry::LineStorage::materialized);
    const Geometry b = Geometry::make(3, 5, Geometry::LineStorage::streamed);
    CHECK_FALSE(b.lines_materialized());
    CHECK_THROWS_AS(b.lines(), std::logic_error);
    std::vector<Line> got;
    b.for_each_line([&](const Line& l) { got.push_back(l); });
    std::sort(got.begin(), got.end());
    CHECK(std::equal(got.begin(), got.end(), a.lines().begin(), a.lines().end()));
}

TEST_CASE("PG(5,7) is streamed") {
    const Geometry g = Geometry::make(7, 5);
    CHECK(g.num_points() == 19608);
    CHECK(g.num_lines() == 6865251);
    CHECK_FALSE(g.lines_materialized());
    const Line l = g.line_span(0, 1);
    CHECK(l.size() == 8);
}

TEST_CASE("lines_skew") {
    const Geometry g = Geometry::make(2, 5);
    const PointId e1 = pt(g, {1, 0, 0, 0, 0, 0}), e2 = pt(g, {0, 1, 0, 0, 0, 0});
    const PointId e3 = pt(g, {0, 0, 1, 0, 0, 0}), e4 = pt(g, {0, 0, 0, 1, 0, 0});
    const Line l12 = g.line_span(e1, e2), l34 = g.line_span(e3, e4), l13 = g.line_span(e1, e3);
    CHECK_FALSE(lines_skew(l12, l12));
    CHECK_FALSE(lines_skew(l12, l13));
    CHECK(lines_skew(l12, l34));
}

TEST_CASE("hyperplanes") {
    const std::vector<Elem> c{0, 0, 0, 0, 0, 1};
    const Geometry g2 = Geometry::make(2, 5);
    const Hyperplane h2 = g2.hyperplane(c);
    CHECK(h2.size() == 31);
    const Geometry g3 = Geometry::make(3, 5);
    const Hyperplane h3 = g3.hyperplane(c);
    CHECK(h3.size() == 121);
    CHECK_THROWS_AS(g2.hyperplane(std::vector<Elem>(6, 0)), std::invalid_argument);

    // Every line meets every hyperplane; lines not in it meet it exactly once.
    for (const Geometry* g : {&g2, &g3}) {
        std::mt19937_64 rng(3);
        for (int t = 0; t < 4; ++t) {
            const Hyperplane h = g->hyperplane(oracle::random_covector(*g, rng));
            CHECK(h.size() == counts(g->q(), 4).points);
            std::size_t inside = 0;
            bool ok = true;
            for (const auto& l : g->lines()) {
                std::size_t hits = 0;
                for (auto p : l.points()) hits += h.contains(p);
                ok &= hits == 1 || hits == l.size();
                if (hits == l.size()) {
                    ++inside;
                    ok &= h.classify(l) == Hyperplane::Position::contained && h.meet(l) == kNoPoint;
                } else {
                    ok &= h.classify(l) == Hyperplane::Position::meets_once && h.contains(h.meet(l));
                }
            }
            CHECK(ok);
            CHECK(inside == counts(g->q(), 4).lines);
        }
    }
}

}  // TEST_SUITE
