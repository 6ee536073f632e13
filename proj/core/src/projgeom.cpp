#include "mps/projgeom.hpp"

#include <stdexcept>
#include <string>

namespace mps {
namespace {

std::uint64_t ipow(std::uint64_t b, int e) {
    std::uint64_t r = 1;
    for (int i = 0; i < e; ++i) r *= b;
    return r;
}

constexpr std::uint64_t kMaterializeLineLimit = 1'000'000;

}  // namespace

Line Line::from_points(std::span<const PointId> pts) {
    if (pts.size() < 2 || pts.size() > kMaxLinePoints)
        throw std::invalid_argument("line must have between 2 and " +
                                    std::to_string(kMaxLinePoints) + " points");
    Line l;
    std::ranges::copy(pts, l.pts_.begin());
    l.size_ = static_cast<std::uint8_t>(pts.size());
    std::sort(l.pts_.begin(), l.pts_.begin() + l.size_);
    return l;
}

bool lines_skew(const Line& a, const Line& b) noexcept {
    // Both lists are sorted.
    std::size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        if (a[i] == b[j]) return false;
        if (a[i] < b[j])
            ++i;
        else
            ++j;
    }
    return true;
}

std::vector<Elem> normalize_point(const Field& f, std::span<const Elem> v) {
    auto lead = std::ranges::find_if(v, [](Elem x) { return x != 0; });
    if (lead == v.end()) throw std::invalid_argument("cannot normalize the zero vector");
    const Elem scale = f.inv(*lead);
    std::vector<Elem> out(v.size());
    std::ranges::transform(v, out.begin(), [&](Elem x) { return f.mul(scale, x); });
    return out;
}

Counts counts(int q, int n) {
    if (q < 2 || n < 1) throw std::invalid_argument("counts: need q >= 2 and N >= 1");
    const auto uq = static_cast<std::uint64_t>(q);
    Counts c;
    c.points = (ipow(uq, n + 1) - 1) / (uq - 1);
    c.lines = (ipow(uq, n + 1) - 1) * (ipow(uq, n) - 1) / ((uq * uq - 1) * (uq - 1));
    if (n % 2 == 1) c.spread_size = (ipow(uq, n + 1) - 1) / (uq * uq - 1);
    return c;
}

// ---------------------------------------------------------------------------

Hyperplane::Hyperplane(const Geometry& geo, std::span<const Elem> covector)
    : covector_(covector.begin(), covector.end()), member_(geo.num_points(), 0) {
    if (covector.size() != geo.vector_length())
        throw std::invalid_argument("hyperplane covector has wrong length");
    if (std::ranges::all_of(covector, [](Elem x) { return x == 0; }))
        throw std::invalid_argument("hyperplane covector must be nonzero");
    const Field& f = geo.field();
    for (auto x : covector)
        if (x >= f.order()) throw std::invalid_argument("hyperplane covector entry out of range");
    for (PointId p = 0; p < geo.num_points(); ++p) {
        auto c = geo.coords(p);
        Elem s = 0;
        for (std::size_t i = 0; i < c.size(); ++i) s = f.add(s, f.mul(covector_[i], c[i]));
        if (s == 0) {
            member_[p] = 1;
            points_.push_back(p);
        }
    }
}

Hyperplane::Position Hyperplane::classify(const Line& l) const noexcept {
    std::size_t in = 0;
    for (auto p : l.points()) in += member_[p];
    return in == l.size() ? Position::contained : Position::meets_once;
}

PointId Hyperplane::meet(const Line& l) const noexcept {
    PointId hit = kNoPoint;
    std::size_t in = 0;
    for (auto p : l.points()) {
        if (member_[p]) {
            hit = p;
            ++in;
        }
    }
    return in == 1 ? hit : kNoPoint;
}

// ---------------------------------------------------------------------------

Geometry Geometry::make(int q, int n, LineStorage storage) {
    if (n < 2 || n > 5)
        throw std::invalid_argument("unsupported projective dimension N=" + std::to_string(n) +
                                    " (expected 2..5)");
    Geometry g(Field::make(q));
    g.n_ = n;
    g.counts_ = mps::counts(q, n);
    g.num_points_ = static_cast<std::size_t>(g.counts_.points);

    const std::size_t len = g.vector_length();
    const std::uint64_t total = ipow(static_cast<std::uint64_t>(q), n + 1);
    const Field& f = g.field_;
    g.code_to_point_.assign(total, kNoPoint);
    g.coords_.reserve(g.num_points_ * len);

    std::vector<Elem> digits(len);
    PointId next = 0;
    for (std::uint64_t code = 1; code < total; ++code) {
        std::uint64_t c = code;
        for (std::size_t k = len; k-- > 0;) {
            digits[k] = static_cast<Elem>(c % q);
            c /= q;
        }
        std::size_t lead = 0;
        while (digits[lead] == 0) ++lead;
        if (digits[lead] == 1) {
            g.code_to_point_[code] = next++;
            g.coords_.insert(g.coords_.end(), digits.begin(), digits.end());
        } else {
            // The normalized vector has a smaller code and is already numbered.
            const Elem s = f.inv(digits[lead]);
            std::uint64_t nc = 0;
            for (std::size_t k = 0; k < len; ++k) nc = nc * q + f.mul(s, digits[k]);
            g.code_to_point_[code] = g.code_to_point_[nc];
        }
    }
    if (next != g.num_points_) throw std::logic_error("point enumeration count mismatch");

    const bool materialize =
        storage == LineStorage::materialized ||
        (storage == LineStorage::automatic && g.counts_.lines <= kMaterializeLineLimit);
    if (materialize) {
        g.lines_.reserve(g.counts_.lines);
        g.enumerate_lines_rref([&](const Line& l) { g.lines_.push_back(l); });
        std::sort(g.lines_.begin(), g.lines_.end());
        if (g.lines_.size() != g.counts_.lines) throw std::logic_error("line enumeration count mismatch");
    }
    return g;
}

PointId Geometry::point_of(std::span<const Elem> v) const {
    if (v.size() != vector_length())
        throw std::invalid_argument("vector length " + std::to_string(v.size()) + " != " +
                                    std::to_string(vector_length()));
    std::uint64_t code = 0;
    for (auto x : v) {
        if (x >= q()) throw std::invalid_argument("coordinate " + std::to_string(x) + " out of range");
        code = code * q() + x;
    }
    if (code == 0) throw std::invalid_argument("the zero vector is not a projective point");
    return code_to_point_[code];
}

PointId Geometry::point_of_unchecked(const Elem* v) const noexcept {
    std::uint64_t code = 0;
    for (std::size_t k = 0; k < vector_length(); ++k) code = code * q() + v[k];
    return code_to_point_[code];
}

std::size_t Geometry::span_points(PointId a, PointId b, PointId* out) const noexcept {
    const std::size_t len = vector_length();
    const Elem* va = coords_.data() + a * len;
    const Elem* vb = coords_.data() + b * len;
    std::array<Elem, 6> w{};
    out[0] = a;
    out[1] = b;
    std::size_t n = 2;
    for (int lambda = 1; lambda < q(); ++lambda) {
        const auto l = static_cast<Elem>(lambda);
        for (std::size_t k = 0; k < len; ++k) w[k] = field_.add(va[k], field_.mul(l, vb[k]));
        out[n++] = point_of_unchecked(w.data());
    }
    return n;
}

Line Geometry::line_span(PointId a, PointId b) const {
    if (a == b) throw std::invalid_argument("line_span needs two distinct points (got " +
                                            std::to_string(a) + " twice)");
    if (a >= num_points_ || b >= num_points_) throw std::out_of_range("point id out of range");
    std::array<PointId, kMaxLinePoints> buf{};
    const std::size_t n = span_points(a, b, buf.data());
    return Line::from_points({buf.data(), n});
}

std::span<const Line> Geometry::lines() const {
    if (lines_.empty()) throw std::logic_error("lines are not materialized for this geometry");
    return lines_;
}

void Geometry::for_each_line(const std::function<void(const Line&)>& fn) const {
    if (!lines_.empty()) {
        for (const auto& l : lines_) fn(l);
        return;
    }
    enumerate_lines_rref(fn);
}

void Geometry::enumerate_lines_rref(const std::function<void(const Line&)>& fn) const {
    // Every line is the row space of exactly one 2 x (N+1) matrix in reduced
    // row echelon form with pivots i < j.
    const int len = static_cast<int>(vector_length());
    std::array<Elem, 6> r1{}, r2{}, w{};
    std::array<PointId, kMaxLinePoints> pts{};
    std::vector<std::pair<int, int>> free_slots;  // (row, column)
    for (int i = 0; i < len; ++i) {
        for (int j = i + 1; j < len; ++j) {
            free_slots.clear();
            for (int k = i + 1; k < len; ++k)
                if (k != j) free_slots.emplace_back(0, k);
            for (int k = j + 1; k < len; ++k) free_slots.emplace_back(1, k);
            const std::uint64_t combos = ipow(static_cast<std::uint64_t>(q()), static_cast<int>(free_slots.size()));
            for (std::uint64_t idx = 0; idx < combos; ++idx) {
                r1.fill(0);
                r2.fill(0);
                r1[i] = 1;
                r2[j] = 1;
                std::uint64_t c = idx;
                for (const auto& [row, col] : free_slots) {
                    const auto d = static_cast<Elem>(c % q());
                    c /= q();
                    (row == 0 ? r1 : r2)[col] = d;
                }
                std::size_t n = 0;
                pts[n++] = point_of_unchecked(r2.data());
                for (int mu = 0; mu < q(); ++mu) {
                    const auto m = static_cast<Elem>(mu);
                    for (int k = 0; k < len; ++k) w[k] = field_.add(r1[k], field_.mul(m, r2[k]));
                    pts[n++] = point_of_unchecked(w.data());
                }
                fn(Line::from_points({pts.data(), n}));
            }
        }
    }
}

std::vector<Line> Geometry::lines_through(PointId p) const {
    if (p >= num_points_) throw std::out_of_range("point id out of range");
    std::vector<Line> out;
    std::vector<std::uint8_t> seen(num_points_, 0);
    seen[p] = 1;
    std::array<PointId, kMaxLinePoints> buf{};
    for (PointId b = 0; b < num_points_; ++b) {
        if (seen[b]) continue;
        const std::size_t n = span_points(p, b, buf.data());
        for (std::size_t k = 0; k < n; ++k) seen[buf[k]] = 1;
        out.push_back(Line::from_points({buf.data(), n}));
    }
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace mps
