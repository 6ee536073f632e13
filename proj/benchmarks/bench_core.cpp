#include <benchmark/benchmark.h>

#include <map>

#include "mps/builder.hpp"
#include "mps/searcher.hpp"

using namespace mps;

namespace {

const Geometry& geometry(int q) {
    static std::map<int, Geometry> cache;
    auto it = cache.find(q);
    if (it == cache.end()) it = cache.emplace(q, Geometry::make(q, 5)).first;
    return it->second;
}

void BM_LineSpan(benchmark::State& state) {
    const Geometry& g = geometry(static_cast<int>(state.range(0)));
    PointId a = 0, b = 1;
    const auto n = static_cast<PointId>(g.num_points());
    for (auto _ : state) {
        benchmark::DoNotOptimize(g.line_span(a, b));
        a = (a + 7) % n;
        b = (b + 13) % n;
        if (a == b) b = (b + 1) % n;
    }
}
BENCHMARK(BM_LineSpan)->Arg(2)->Arg(3)->Arg(5);

void BM_IsMaximal(benchmark::State& state) {
    const Geometry& g = geometry(static_cast<int>(state.range(0)));
    Rng rng(1);
    PartialSpread s(g);
    greedy_complete(s, rng);
    for (auto _ : state) benchmark::DoNotOptimize(is_maximal(s));
}
BENCHMARK(BM_IsMaximal)->Arg(2)->Arg(3)->Arg(4);

void BM_GreedyComplete(benchmark::State& state) {
    const Geometry& g = geometry(static_cast<int>(state.range(0)));
    Rng rng(2);
    for (auto _ : state) {
        PartialSpread s(g);
        benchmark::DoNotOptimize(greedy_complete(s, rng));
    }
}
BENCHMARK(BM_GreedyComplete)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);

void BM_LemmaLine(benchmark::State& state) {
    const Geometry& g = geometry(static_cast<int>(state.range(0)));
    const Hyperplane h = construction_hyperplane(g);
    const Geometry g4 = Geometry::make(g.q(), 4);
    const PartialSpread seed = embed_in_hyperplane(g, algebraic_pg4_mps(g4));
    const PartialSpread covered = cover_holes(g, h, seed);
    std::vector<Line> blockers;
    for (std::size_t i = 0; i < covered.size(); ++i)
        if (covered.origins()[i] == LineOrigin::external) blockers.push_back(covered.lines()[i]);
    const PointId x = seed.lines().front()[0];
    for (auto _ : state) benchmark::DoNotOptimize(lemma_line(g, h, x, blockers));
}
BENCHMARK(BM_LemmaLine)->Arg(2)->Arg(3)->Arg(4);

}  // namespace
BENCHMARK_MAIN();
