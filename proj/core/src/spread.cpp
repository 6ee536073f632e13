#include "mps/spread.hpp"

#include <algorithm>

#include "mps/bounds.hpp"

namespace mps {

PartialSpread::PartialSpread(const Geometry& geo) : geo_(&geo), covered_(geo.num_points(), 0) {}

bool PartialSpread::can_insert(const Line& l) const noexcept {
    for (auto p : l.points())
        if (covered_[p]) return false;
    return true;
}

void PartialSpread::insert(const Line& l, LineOrigin origin) {
    for (auto p : l.points()) {
        if (covered_[p])
            throw SpreadConflict(p, "line is not skew to the partial spread: point " +
                                        std::to_string(p) + " is already covered");
    }
    for (auto p : l.points()) covered_[p] = 1;
    covered_count_ += l.size();
    lines_.push_back(l);
    origins_.push_back(origin);
}

void PartialSpread::rebuild_covered() {
    std::ranges::fill(covered_, 0);
    covered_count_ = 0;
    for (const auto& l : lines_) {
        for (auto p : l.points()) covered_[p] = 1;
        covered_count_ += l.size();
    }
}

void PartialSpread::remove_at(std::size_t i) {
    if (i >= lines_.size()) throw std::out_of_range("spread member index out of range");
    lines_.erase(lines_.begin() + static_cast<std::ptrdiff_t>(i));
    origins_.erase(origins_.begin() + static_cast<std::ptrdiff_t>(i));
    rebuild_covered();
}

bool PartialSpread::remove(const Line& l) {
    auto i = index_of(l);
    if (!i) return false;
    remove_at(*i);
    return true;
}

void PartialSpread::remove_indices(std::vector<std::size_t> idx) {
    std::ranges::sort(idx, std::greater<>());
    idx.erase(std::unique(idx.begin(), idx.end()), idx.end());
    for (auto i : idx) {
        if (i >= lines_.size()) throw std::out_of_range("spread member index out of range");
        lines_.erase(lines_.begin() + static_cast<std::ptrdiff_t>(i));
        origins_.erase(origins_.begin() + static_cast<std::ptrdiff_t>(i));
    }
    rebuild_covered();
}

std::optional<std::size_t> PartialSpread::index_of(const Line& l) const {
    auto it = std::ranges::find(lines_, l);
    if (it == lines_.end()) return std::nullopt;
    return static_cast<std::size_t>(it - lines_.begin());
}

// ---------------------------------------------------------------------------

std::vector<PointId> holes(const PartialSpread& s, const Hyperplane* h) {
    std::vector<PointId> out;
    out.reserve(s.hole_count());
    const auto& cov = s.covered();
    for (PointId p = 0; p < cov.size(); ++p)
        if (!cov[p] && (h == nullptr || h->contains(p))) out.push_back(p);
    return out;
}

namespace {

// Visits every all-hole line once, at the pair of its two smallest points,
// in canonical order. Stops early when visit returns false.
template <typename Visit>
void scan_hole_lines(const PartialSpread& s, Visit&& visit) {
    const Geometry& geo = s.geometry();
    const auto& cov = s.covered();
    const std::size_t per_line = geo.points_per_line();
    if (s.hole_count() < per_line) return;

    const std::vector<PointId> hs = holes(s);
    // seen[b] == stamp means b already lies on a line through the current a.
    std::vector<std::uint32_t> seen(geo.num_points(), 0);
    std::uint32_t stamp = 0;
    std::array<PointId, kMaxLinePoints> buf{};
    for (std::size_t ia = 0; ia < hs.size(); ++ia) {
        const PointId a = hs[ia];
        ++stamp;
        for (std::size_t ib = ia + 1; ib < hs.size(); ++ib) {
            const PointId b = hs[ib];
            if (seen[b] == stamp) continue;
            const std::size_t n = geo.span_points(a, b, buf.data());
            bool all_holes = true;
            for (std::size_t k = 0; k < n; ++k) {
                seen[buf[k]] = stamp;
                // A point below a means the line either has a covered point
                // or was already reported at a smaller hole.
                if (cov[buf[k]] || buf[k] < a) all_holes = false;
            }
            if (all_holes && !visit(Line::from_points({buf.data(), n}))) return;
        }
    }
}

}  // namespace

std::vector<Line> hole_lines(const PartialSpread& s) {
    std::vector<Line> out;
    scan_hole_lines(s, [&](const Line& l) {
        out.push_back(l);
        return true;
    });
    std::sort(out.begin(), out.end());
    return out;
}

MaximalityVerdict is_maximal(const PartialSpread& s) {
    MaximalityVerdict v;
    scan_hole_lines(s, [&](const Line& l) {
        v.maximal = false;
        v.witness = l;
        return false;
    });
    return v;
}

bool hyperplane_saturated(const PartialSpread& s, const Hyperplane& h) {
    return std::ranges::all_of(h.points(), [&](PointId p) { return s.is_covered(p); });
}

DeficiencyReport deficiency(const PartialSpread& s) {
    const Geometry& geo = s.geometry();
    if (geo.dimension() % 2 == 0)
        throw std::invalid_argument("deficiency is defined only for odd projective dimension");
    DeficiencyReport r;
    r.size = s.size();
    r.spread_size = static_cast<std::size_t>(geo.counts().spread_size);
    r.deficiency = r.spread_size - r.size;
    r.maximal = is_maximal(s).maximal;
    if (r.maximal && geo.dimension() == 5 && bounds_supported(geo.q())) {
        const BoundsRow b = bounds(geo.q());
        r.below_minimum = r.size < b.min_size;
        r.inside_forbidden_gap = r.deficiency > 0 && r.deficiency < static_cast<std::size_t>(b.delta_min);
    }
    return r;
}

}  // namespace mps
