#pragma once

// Combinatorial model of PG(N,q) for 2 <= N <= 5 and the small field orders
// supported by mps::Field.
//
// Points are normalized coordinate vectors (first nonzero entry equal to 1)
// numbered in lexicographic order of their coordinates. A line is stored
// canonically as its sorted list of q+1 point ids.

#include <algorithm>
#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "mps/gf.hpp"

namespace mps {

using PointId = std::uint32_t;

inline constexpr std::size_t kMaxLinePoints = 10;  // q <= 9
inline constexpr PointId kNoPoint = 0xffffffffu;

class Line {
public:
    Line() = default;

    /// Canonicalizes an unordered list of distinct point ids.
    static Line from_points(std::span<const PointId> pts);

    std::span<const PointId> points() const noexcept { return {pts_.data(), size_}; }
    std::size_t size() const noexcept { return size_; }
    PointId operator[](std::size_t i) const noexcept { return pts_[i]; }

    /// The two smallest point ids; they span the line.
    std::pair<PointId, PointId> basis() const noexcept { return {pts_[0], pts_[1]}; }

    bool contains(PointId p) const noexcept {
        return std::binary_search(pts_.begin(), pts_.begin() + size_, p);
    }

    friend bool operator==(const Line& a, const Line& b) noexcept {
        return std::ranges::equal(a.points(), b.points());
    }
    friend std::strong_ordering operator<=>(const Line& a, const Line& b) noexcept {
        return std::lexicographical_compare_three_way(a.pts_.begin(), a.pts_.begin() + a.size_,
                                                      b.pts_.begin(), b.pts_.begin() + b.size_);
    }

private:
    std::array<PointId, kMaxLinePoints> pts_{};
    std::uint8_t size_ = 0;
};

/// Set-disjointness of the point lists, which in a projective space is the
/// same as skewness.
bool lines_skew(const Line& a, const Line& b) noexcept;

/// Scales v by the inverse of its first nonzero entry. Throws
/// std::invalid_argument for the zero vector.
std::vector<Elem> normalize_point(const Field& f, std::span<const Elem> v);

struct Counts {
    std::uint64_t points = 0;
    std::uint64_t lines = 0;
    std::uint64_t spread_size = 0;  // 0 when N is even
};

/// Closed-form point, line and spread counts of PG(N,q).
Counts counts(int q, int n);

class Geometry;

/// Point set of a hyperplane sum(c_i x_i) = 0.
class Hyperplane {
public:
    enum class Position { contained, meets_once };

    Hyperplane(const Geometry& geo, std::span<const Elem> covector);

    std::span<const Elem> covector() const noexcept { return covector_; }
    bool contains(PointId p) const noexcept { return member_[p] != 0; }
    std::span<const PointId> points() const noexcept { return points_; }
    std::size_t size() const noexcept { return points_.size(); }

    Position classify(const Line& l) const noexcept;

    /// The unique point of l on the hyperplane, or kNoPoint when l lies in it.
    PointId meet(const Line& l) const noexcept;

private:
    std::vector<Elem> covector_;
    std::vector<std::uint8_t> member_;
    std::vector<PointId> points_;
};

class Geometry {
public:
    enum class LineStorage { automatic, materialized, streamed };

    /// Enumerates PG(n,q). Lines are materialized up front when requested,
    /// or automatically while their count stays below a few million point
    /// ids (q <= 5 at n = 5); otherwise they are generated on demand.
    static Geometry make(int q, int n, LineStorage storage = LineStorage::automatic);

    const Field& field() const noexcept { return field_; }
    int q() const noexcept { return field_.order(); }
    int dimension() const noexcept { return n_; }
    std::size_t vector_length() const noexcept { return static_cast<std::size_t>(n_) + 1; }
    std::size_t num_points() const noexcept { return num_points_; }
    std::uint64_t num_lines() const noexcept { return counts_.lines; }
    std::size_t points_per_line() const noexcept { return static_cast<std::size_t>(q()) + 1; }
    const Counts& counts() const noexcept { return counts_; }

    std::span<const Elem> coords(PointId p) const noexcept {
        return {coords_.data() + p * vector_length(), vector_length()};
    }

    /// Point id of the projective point of any nonzero vector. Throws
    /// std::invalid_argument on length mismatch, out-of-range entries or
    /// the zero vector.
    PointId point_of(std::span<const Elem> v) const;

    /// Unchecked variant for vectors already known to be valid and nonzero.
    PointId point_of_unchecked(const Elem* v) const noexcept;

    /// The line through two distinct points. Throws std::invalid_argument
    /// when a == b.
    Line line_span(PointId a, PointId b) const;

    /// Writes the q+1 points of the line through a and b (unsorted, a and b
    /// first) into out; returns the count. No validation.
    std::size_t span_points(PointId a, PointId b, PointId* out) const noexcept;

    bool lines_materialized() const noexcept { return !lines_.empty(); }

    /// All lines in canonical order. Throws std::logic_error when lines are
    /// streamed.
    std::span<const Line> lines() const;

    /// Calls fn(line) for every line of the space, materialized or not.
    void for_each_line(const std::function<void(const Line&)>& fn) const;

    /// Lines through p in canonical order, generated on demand.
    std::vector<Line> lines_through(PointId p) const;

    Hyperplane hyperplane(std::span<const Elem> covector) const { return Hyperplane(*this, covector); }

private:
    explicit Geometry(Field f) : field_(std::move(f)) {}

    void enumerate_lines_rref(const std::function<void(const Line&)>& fn) const;

    Field field_;
    int n_ = 0;
    std::size_t num_points_ = 0;
    Counts counts_;
    std::vector<Elem> coords_;
    std::vector<PointId> code_to_point_;  // indexed by base-q code of a vector
    std::vector<Line> lines_;
};

}  // namespace mps
