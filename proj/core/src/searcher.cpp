#include "mps/searcher.hpp"

#include <algorithm>
#include <mutex>
#include <numeric>
#include <thread>

#include "mps/bounds.hpp"
#include "mps/builder.hpp"

namespace mps {
namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::size_t distance(std::size_t a, std::size_t b) { return a > b ? a - b : b - a; }

// splitmix64 finalizer; spreads worker and target ids over the seed space.
std::uint64_t mix(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

}  // namespace

void SearchConfig::validate() const {
    if (restarts < 1) throw std::invalid_argument("restarts must be >= 1");
    if (max_steps < 1) throw std::invalid_argument("max_steps must be >= 1");
    if (removal_width < 1) throw std::invalid_argument("removal_width must be >= 1");
    if (time_budget_s < 0) throw std::invalid_argument("time budget must be non-negative");
    if (target_size && *target_size == 0) throw std::invalid_argument("target size must be positive");
}

SearchConfig SearchConfig::preset(Budget budget, int q) {
    SearchConfig c;
    c.removal_width = 3;
    const bool ci = budget == Budget::ci;
    switch (q) {
    case 2:
        c.restarts = ci ? 4 : 16;
        c.max_steps = ci ? 5000 : 50000;
        c.time_budget_s = ci ? 10.0 : 120.0;
        break;
    case 3:
        // Downward moves at q = 3 need wider perturbations than t = 3.
        c.removal_width = ci ? 3 : 6;
        c.restarts = ci ? 2 : 8;
        c.max_steps = ci ? 3000 : 40000;
        c.time_budget_s = ci ? 10.0 : 600.0;
        break;
    default:
        c.restarts = ci ? 1 : 4;
        c.max_steps = ci ? 1000 : 20000;
        c.time_budget_s = ci ? 20.0 : 1800.0;
        break;
    }
    return c;
}

std::size_t greedy_complete(PartialSpread& s, Rng& rng) {
    std::vector<Line> cand = hole_lines(s);
    std::size_t added = 0;
    // Stale candidates are dropped when drawn, which keeps the draw uniform
    // over the lines that are still insertable.
    while (!cand.empty()) {
        std::uniform_int_distribution<std::size_t> pick(0, cand.size() - 1);
        const std::size_t i = pick(rng);
        if (s.can_insert(cand[i])) {
            s.insert(cand[i], LineOrigin::search);
            ++added;
        }
        cand[i] = cand.back();
        cand.pop_back();
    }
    return added;
}

void remove_random_lines(PartialSpread& s, std::size_t count, Rng& rng) {
    count = std::min(count, s.size());
    if (count == 0) return;
    std::vector<std::size_t> idx(s.size());
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    for (std::size_t i = 0; i < count; ++i) {
        std::uniform_int_distribution<std::size_t> pick(i, idx.size() - 1);
        std::swap(idx[i], idx[pick(rng)]);
    }
    idx.resize(count);
    s.remove_indices(std::move(idx));
}

SearchResult local_search_resize(const PartialSpread& start, std::size_t target, const SearchConfig& cfg,
                                 const SpreadObserver& observer) {
    cfg.validate();
    if (!is_maximal(start).maximal) throw std::invalid_argument("local_search_resize: start is not maximal");

    SearchResult res{false, start, 0, 0};
    if (start.size() == target) {
        res.success = true;
        return res;
    }
    Rng rng(cfg.rng_seed);
    std::bernoulli_distribution coin(0.5);
    const auto t0 = Clock::now();
    auto out_of_time = [&] {
        if (cfg.cancel && cfg.cancel->load(std::memory_order_relaxed)) return true;
        return cfg.time_budget_s > 0 && seconds_since(t0) > cfg.time_budget_s;
    };
    std::size_t best_dist = distance(start.size(), target);

    for (int r = 0; r < cfg.restarts && !out_of_time(); ++r) {
        ++res.restarts_used;
        PartialSpread cur = start;
        for (long step = 0; step < cfg.max_steps; ++step) {
            if ((step & 15) == 0 && out_of_time()) break;
            ++res.steps;
            PartialSpread cand = cur;
            remove_random_lines(cand, static_cast<std::size_t>(cfg.removal_width), rng);
            greedy_complete(cand, rng);
            if (observer) observer(cand);

            const std::size_t dn = distance(cand.size(), target);
            const std::size_t dc = distance(cur.size(), target);
            if (dn < best_dist) {
                best_dist = dn;
                res.spread = cand;
            }
            if (cand.size() == target) {
                // Greedy completion is maximal by construction; check anyway.
                if (!is_maximal(cand).maximal) throw std::logic_error("greedy completion left an extendable spread");
                res.success = true;
                res.spread = std::move(cand);
                return res;
            }
            if (dn < dc || (dn == dc && coin(rng))) cur = std::move(cand);
        }
    }
    return res;
}

PartialSpread seed_pg4_mps(const Geometry& pg4, std::uint64_t rng_seed, const SearchConfig& cfg) {
    if (pg4.dimension() != 4) throw std::invalid_argument("seed_pg4_mps needs PG(4,q)");
    const std::size_t q = static_cast<std::size_t>(pg4.q());
    const std::size_t target = q * q * q + 1;
    Rng rng(rng_seed);
    PartialSpread s(pg4);
    greedy_complete(s, rng);
    SearchConfig c = cfg;
    c.rng_seed = mix(rng_seed);
    SearchResult r = local_search_resize(s, target, c);
    if (!r.success)
        throw SearchFailure(r.spread.size(), "seed_pg4_mps: best size " + std::to_string(r.spread.size()) +
                                                 " of target " + std::to_string(target) +
                                                 "; retry with another seed or a larger budget");
    PartialSpread out(pg4);
    for (const auto& l : r.spread.lines()) out.insert(l, LineOrigin::hyperplane);
    return out;
}

namespace {

// Monic irreducible polynomial over GF(q) of the given degree (2 or 3), as
// coefficients c_0..c_{d-1} of x^d - (c_{d-1} x^{d-1} + ... + c_0). For
// degree <= 3, irreducible is the same as having no root.
std::vector<Elem> irreducible(const Field& f, int degree) {
    const int q = f.order();
    std::vector<Elem> c(degree, 0);
    const int total = degree == 2 ? q * q : q * q * q;
    for (int code = 0; code < total; ++code) {
        int v = code;
        for (int i = 0; i < degree; ++i) {
            c[i] = static_cast<Elem>(v % q);
            v /= q;
        }
        bool has_root = false;
        for (int x = 0; x < q && !has_root; ++x) {
            const auto ex = static_cast<Elem>(x);
            Elem rhs = 0;
            Elem pw = 1;
            for (int i = 0; i < degree; ++i) {
                rhs = f.add(rhs, f.mul(c[i], pw));
                pw = f.mul(pw, ex);
            }
            has_root = f.sub(pw, rhs) == 0;
        }
        if (!has_root) return c;
    }
    throw std::logic_error("no irreducible polynomial found");
}

}  // namespace

PartialSpread algebraic_pg4_mps(const Geometry& pg4) {
    if (pg4.dimension() != 4) throw std::invalid_argument("algebraic_pg4_mps needs PG(4,q)");
    const Field& f = pg4.field();
    const int q = f.order();
    const std::vector<Elem> c = irreducible(f, 3);
    // Companion matrix: M e0 = e1, M e1 = e2, M e2 = c0 e0 + c1 e1 + c2 e2.
    const Elem m[3][3] = {{0, 0, c[0]}, {1, 0, c[1]}, {0, 1, c[2]}};

    PartialSpread s(pg4);
    std::vector<Elem> u(5), w(5);
    for (int code = 0; code < q * q * q; ++code) {
        Elem b[3] = {static_cast<Elem>(code / (q * q)), static_cast<Elem>((code / q) % q),
                     static_cast<Elem>(code % q)};
        u = {1, 0, b[0], b[1], b[2]};
        w = {0, 1, 0, 0, 0};
        for (int i = 0; i < 3; ++i) {
            Elem acc = 0;
            for (int j = 0; j < 3; ++j) acc = f.add(acc, f.mul(m[i][j], b[j]));
            w[2 + i] = acc;
        }
        s.insert(pg4.line_span(pg4.point_of(u), pg4.point_of(w)), LineOrigin::hyperplane);
    }
    const std::vector<Elem> e2 = {0, 0, 1, 0, 0};
    const std::vector<Elem> e3 = {0, 0, 0, 1, 0};
    s.insert(pg4.line_span(pg4.point_of(e2), pg4.point_of(e3)), LineOrigin::hyperplane);
    return s;
}

PartialSpread desarguesian_spread(const Geometry& geo) {
    if (geo.dimension() % 2 == 0) throw std::invalid_argument("line spreads need odd dimension");
    const Field& f = geo.field();
    // omega^2 = s + t*omega; omega * (a + b*omega) = b*s + (a + b*t)*omega.
    const std::vector<Elem> c = irreducible(f, 2);
    const Elem s0 = c[0], t1 = c[1];
    PartialSpread s(geo);
    std::vector<Elem> w(geo.vector_length());
    for (PointId p = 0; p < geo.num_points(); ++p) {
        if (s.is_covered(p)) continue;
        auto v = geo.coords(p);
        for (std::size_t k = 0; k < v.size(); k += 2) {
            const Elem a = v[k], b = v[k + 1];
            w[k] = f.mul(b, s0);
            w[k + 1] = f.add(a, f.mul(b, t1));
        }
        s.insert(geo.line_span(p, geo.point_of(w)), LineOrigin::external);
    }
    return s;
}

const char* to_string(SpectrumEntry::Source s) noexcept {
    switch (s) {
    case SpectrumEntry::Source::ladder:
        return "ladder";
    case SpectrumEntry::Source::search:
        return "search";
    case SpectrumEntry::Source::spread:
        return "spread";
    }
    return "?";
}

SpectrumReport spectrum_scan(const Geometry& geo, const SearchConfig& cfg, int jobs) {
    cfg.validate();
    if (geo.dimension() != 5) throw std::invalid_argument("spectrum_scan works in PG(5,q)");
    if (jobs < 1) throw std::invalid_argument("jobs must be >= 1");
    const int q = geo.q();
    const BoundsRow b = bounds(q);

    SpectrumReport rep;
    rep.q = q;
    std::mutex mu;

    auto record = [&](const PartialSpread& s, SpectrumEntry::Source src, std::string provenance,
                      std::optional<std::uint64_t> seed, double secs) {
        SpectrumEntry e;
        e.size = s.size();
        e.source = src;
        e.certificate = make_certificate(s, std::move(provenance), seed);
        e.seconds = secs;
        rep.achieved.emplace(e.size, std::move(e));
    };

    {
        const auto t0 = Clock::now();
        PartialSpread full = desarguesian_spread(geo);
        if (!is_maximal(full).maximal) throw std::logic_error("desarguesian spread is not maximal");
        record(full, SpectrumEntry::Source::spread, "spread", std::nullopt, seconds_since(t0));
    }
    {
        const Geometry pg4 = Geometry::make(q, 4, Geometry::LineStorage::streamed);
        const PartialSpread seed = embed_in_hyperplane(geo, algebraic_pg4_mps(pg4));
        LadderOptions lo;
        lo.verify_each_step = false;
        const Hyperplane h = construction_hyperplane(geo);
        LadderState st = start_ladder(geo, h, seed);
        for (int k = 0;; ++k) {
            const auto t0 = Clock::now();
            if (k > 0) ladder_step(st, *least_hyperplane_line(st), false);
            if (!is_maximal(st.spread).maximal) throw std::logic_error("ladder produced a non-maximal spread");
            record(st.spread, SpectrumEntry::Source::ladder, "ladder-" + std::to_string(k), std::nullopt,
                   seconds_since(t0));
            if (k == n_max(q)) break;
        }
    }

    std::vector<std::size_t> targets;
    for (std::size_t size = b.min_size; size < b.spread_size; ++size) {
        if (rep.achieved.contains(size)) continue;
        if (size_excluded_by_bounds(q, size)) {
            rep.excluded.push_back(size);
            continue;
        }
        targets.push_back(size);
    }

    auto worker = [&](int w) {
        for (std::size_t i = static_cast<std::size_t>(w); i < targets.size(); i += static_cast<std::size_t>(jobs)) {
            const std::size_t target = targets[i];
            std::vector<Line> start_lines;
            {
                std::lock_guard lock(mu);
                if (rep.achieved.contains(target)) continue;
                // Closest certified spread that is not the full spread.
                const SpectrumEntry* best = nullptr;
                for (const auto& [size, e] : rep.achieved) {
                    if (size == b.spread_size) continue;
                    if (!best || distance(size, target) < distance(best->size, target)) best = &e;
                }
                start_lines = best->certificate.lines;
            }
            PartialSpread start(geo);
            for (const auto& l : start_lines) start.insert(l);

            SearchConfig c = cfg;
            c.rng_seed = mix(cfg.rng_seed ^ mix(target) ^ (static_cast<std::uint64_t>(w) << 48));
            const auto t0 = Clock::now();
            auto observe = [&](const PartialSpread& s) {
                std::lock_guard lock(mu);
                if (rep.achieved.contains(s.size())) return;
                if (!is_maximal(s).maximal) return;
                record(s, SpectrumEntry::Source::search, "search", c.rng_seed, seconds_since(t0));
            };
            local_search_resize(start, target, c, observe);
        }
    };

    if (jobs == 1) {
        worker(0);
    } else {
        std::vector<std::jthread> pool;
        for (int w = 0; w < jobs; ++w) pool.emplace_back(worker, w);
    }

    for (auto size : targets)
        if (!rep.achieved.contains(size)) rep.missed.push_back(size);
    return rep;
}

}  // namespace mps
