#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace kcross {

using VertexId = std::uint32_t;

struct Point {
    std::int64_t x = 0;
    std::int64_t y = 0;

    friend bool operator==(const Point&, const Point&) = default;
};

/// Sign of an ordered triple. Minus: r strictly left of the directed line p->q.
/// Plus: strictly right. Zero: collinear (only ever produced for invalid input).
enum class Orientation : std::int8_t { Minus = -1, Zero = 0, Plus = 1 };

constexpr Orientation flip(Orientation o) {
    return static_cast<Orientation>(-static_cast<std::int8_t>(o));
}

const char* to_string(Orientation o);

/// Exact orientation using 128-bit intermediates; coordinates must fit in 32 bits.
Orientation orientation(const Point& p, const Point& q, const Point& r);

/// True iff the open segments a0a1 and b0b1 meet in exactly one interior point.
/// Segments sharing an endpoint never cross.
bool segments_cross(const Point& a0, const Point& a1, const Point& b0, const Point& b1);

constexpr std::int64_t coordinate_limit = (std::int64_t{1} << 31) - 1;

class GeneralPositionError : public std::invalid_argument {
public:
    GeneralPositionError(const std::string& what, std::array<std::size_t, 3> triple)
        : std::invalid_argument(what), triple_(triple) {}

    /// Offending ids. For duplicate points only the first two entries are meaningful.
    const std::array<std::size_t, 3>& triple() const noexcept { return triple_; }

private:
    std::array<std::size_t, 3> triple_;
};

/// Points in general position; ids are indices into the list.
class PointSet {
public:
    PointSet() = default;

    /// Validates range, distinctness and general position (throws GeneralPositionError).
    explicit PointSet(std::vector<Point> points);

    std::size_t size() const noexcept { return points_.size(); }
    bool empty() const noexcept { return points_.empty(); }
    const Point& operator[](std::size_t i) const { return points_[i]; }
    const std::vector<Point>& points() const noexcept { return points_; }

    Orientation orientation(std::size_t p, std::size_t q, std::size_t r) const {
        return kcross::orientation(points_[p], points_[q], points_[r]);
    }

private:
    std::vector<Point> points_;
};

/// Returns the first collinear triple (i < j < k) or an empty vector.
std::vector<std::size_t> find_collinear_triple(std::span<const Point> points);

/// True if a new point would be collinear with some pair of `points` or duplicate one.
bool breaks_general_position(std::span<const Point> points, const Point& candidate);

/// Complete orientation map over all ordered triples of distinct ids.
class OrderType {
public:
    explicit OrderType(const PointSet& points);

    std::size_t point_count() const noexcept { return n_; }

    /// Number of stored ordered triples: n(n-1)(n-2).
    std::size_t triple_count() const noexcept { return n_ < 3 ? 0 : n_ * (n_ - 1) * (n_ - 2); }

    Orientation sign(std::size_t p, std::size_t q, std::size_t r) const;

    friend bool operator==(const OrderType&, const OrderType&) = default;

private:
    std::size_t n_ = 0;
    std::vector<std::int8_t> signs_;
};

OrderType order_type(const PointSet& points);

/// True iff the bijection `f` (f[i] = image of point i) preserves every triple sign.
/// Throws std::invalid_argument on size mismatch or when f is not a permutation.
bool same_order_type(const PointSet& s, const PointSet& t, std::span<const std::size_t> f);

} // namespace kcross
