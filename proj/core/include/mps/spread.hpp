#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "mps/projgeom.hpp"

namespace mps {

/// Where a member line came from.
enum class LineOrigin : std::uint8_t { hyperplane, external, search };

/// Thrown by PartialSpread::insert when the new line meets a member.
class SpreadConflict : public std::invalid_argument {
public:
    SpreadConflict(PointId blocking, const std::string& what)
        : std::invalid_argument(what), blocking_(blocking) {}
    PointId blocking_point() const noexcept { return blocking_; }

private:
    PointId blocking_;
};

/// A set of pairwise skew lines together with a dense covered-point map.
/// Holds a non-owning pointer to its geometry, which must outlive it.
class PartialSpread {
public:
    explicit PartialSpread(const Geometry& geo);

    const Geometry& geometry() const noexcept { return *geo_; }

    std::size_t size() const noexcept { return lines_.size(); }
    bool empty() const noexcept { return lines_.empty(); }
    const std::vector<Line>& lines() const noexcept { return lines_; }
    const std::vector<LineOrigin>& origins() const noexcept { return origins_; }

    bool is_covered(PointId p) const noexcept { return covered_[p] != 0; }
    const std::vector<std::uint8_t>& covered() const noexcept { return covered_; }
    std::size_t covered_count() const noexcept { return covered_count_; }
    std::size_t hole_count() const noexcept { return geo_->num_points() - covered_count_; }

    /// True when every point of l is uncovered.
    bool can_insert(const Line& l) const noexcept;

    /// Appends l. Throws SpreadConflict naming a covered point of l.
    void insert(const Line& l, LineOrigin origin = LineOrigin::search);

    /// Removes the member at index i (insertion order of the rest is kept)
    /// and rebuilds the covered map.
    void remove_at(std::size_t i);

    /// Removes the member equal to l; returns false if it is not a member.
    bool remove(const Line& l);

    /// Removes several members at once, then rebuilds the covered map.
    void remove_indices(std::vector<std::size_t> idx);

    std::optional<std::size_t> index_of(const Line& l) const;

private:
    void rebuild_covered();

    const Geometry* geo_;
    std::vector<Line> lines_;
    std::vector<LineOrigin> origins_;
    std::vector<std::uint8_t> covered_;
    std::size_t covered_count_ = 0;
};

/// Uncovered points in increasing id order, optionally restricted to h.
std::vector<PointId> holes(const PartialSpread& s, const Hyperplane* h = nullptr);

/// Every line whose points are all uncovered, in canonical order. Walks
/// pairs of holes rather than the lines of the space.
std::vector<Line> hole_lines(const PartialSpread& s);

struct MaximalityVerdict {
    bool maximal = true;
    std::optional<Line> witness;  // least all-hole line when extendable
};

/// A partial spread is maximal iff no line lies entirely in its hole set.
MaximalityVerdict is_maximal(const PartialSpread& s);

/// True iff every point of h is covered, which forces maximality since
/// every line meets every hyperplane.
bool hyperplane_saturated(const PartialSpread& s, const Hyperplane& h);

struct DeficiencyReport {
    std::size_t size = 0;
    std::size_t spread_size = 0;
    std::size_t deficiency = 0;
    bool maximal = false;
    /// Set when a maximal spread contradicts a known size bound.
    bool below_minimum = false;
    bool inside_forbidden_gap = false;
};

/// Deficiency against the spread size of PG(N,q); N must be odd. The bound
/// flags use bounds() for N = 5 and q in the supported table.
DeficiencyReport deficiency(const PartialSpread& s);

}  // namespace mps
