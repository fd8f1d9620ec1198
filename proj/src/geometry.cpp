#include "kcross/geometry.hpp"

#include <algorithm>
#include <cstdlib>
#include <sstream>

namespace kcross {

const char* to_string(Orientation o) {
    switch (o) {
    case Orientation::Minus: return "-";
    case Orientation::Plus: return "+";
    case Orientation::Zero: return "0";
    }
    return "?";
}

Orientation orientation(const Point& p, const Point& q, const Point& r) {
    const __int128 ux = q.x - p.x;
    const __int128 uy = q.y - p.y;
    const __int128 vx = r.x - p.x;
    const __int128 vy = r.y - p.y;
    const __int128 det = ux * vy - uy * vx;
    // Counter-clockwise turn means r is left of p->q, which is the "-" sign.
    if (det > 0) return Orientation::Minus;
    if (det < 0) return Orientation::Plus;
    return Orientation::Zero;
}

bool segments_cross(const Point& a0, const Point& a1, const Point& b0, const Point& b1) {
    const auto s0 = static_cast<int>(orientation(a0, a1, b0));
    const auto s1 = static_cast<int>(orientation(a0, a1, b1));
    if (s0 * s1 >= 0) return false;
    const auto t0 = static_cast<int>(orientation(b0, b1, a0));
    const auto t1 = static_cast<int>(orientation(b0, b1, a1));
    return t0 * t1 < 0;
}

std::vector<std::size_t> find_collinear_triple(std::span<const Point> points) {
    const std::size_t n = points.size();
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            for (std::size_t k = j + 1; k < n; ++k) {
                if (orientation(points[i], points[j], points[k]) == Orientation::Zero) {
                    return {i, j, k};
                }
            }
        }
    }
    return {};
}

bool breaks_general_position(std::span<const Point> points, const Point& candidate) {
    for (std::size_t i = 0; i < points.size(); ++i) {
        if (points[i] == candidate) return true;
        for (std::size_t j = i + 1; j < points.size(); ++j) {
            if (orientation(points[i], points[j], candidate) == Orientation::Zero) return true;
        }
    }
    return false;
}

PointSet::PointSet(std::vector<Point> points) : points_(std::move(points)) {
    for (std::size_t i = 0; i < points_.size(); ++i) {
        const auto& p = points_[i];
        if (std::max(std::abs(p.x), std::abs(p.y)) > coordinate_limit) {
            std::ostringstream msg;
            msg << "point " << i << " (" << p.x << ", " << p.y << ") exceeds the 32-bit coordinate range";
            throw GeneralPositionError(msg.str(), {i, i, i});
        }
    }
    std::vector<std::size_t> order(points_.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        const auto& p = points_[a];
        const auto& q = points_[b];
        return p.x != q.x ? p.x < q.x : (p.y != q.y ? p.y < q.y : a < b);
    });
    for (std::size_t i = 1; i < order.size(); ++i) {
        if (points_[order[i - 1]] == points_[order[i]]) {
            const auto a = std::min(order[i - 1], order[i]);
            const auto b = std::max(order[i - 1], order[i]);
            std::ostringstream msg;
            msg << "duplicate points " << a << " and " << b;
            throw GeneralPositionError(msg.str(), {a, b, b});
        }
    }
    if (auto t = find_collinear_triple(points_); !t.empty()) {
        std::ostringstream msg;
        msg << "collinear triple (" << t[0] << ", " << t[1] << ", " << t[2] << ")";
        throw GeneralPositionError(msg.str(), {t[0], t[1], t[2]});
    }
}

OrderType::OrderType(const PointSet& points) : n_(points.size()), signs_(n_ * n_ * n_, 0) {
    for (std::size_t p = 0; p < n_; ++p) {
        for (std::size_t q = p + 1; q < n_; ++q) {
            for (std::size_t r = q + 1; r < n_; ++r) {
                const auto o = points.orientation(p, q, r);
                if (o == Orientation::Zero) {
                    throw GeneralPositionError("order type of a degenerate point set", {p, q, r});
                }
                const auto s = static_cast<std::int8_t>(o);
                // Even permutations keep the sign, odd ones flip it.
                signs_[(p * n_ + q) * n_ + r] = s;
                signs_[(q * n_ + r) * n_ + p] = s;
                signs_[(r * n_ + p) * n_ + q] = s;
                signs_[(q * n_ + p) * n_ + r] = static_cast<std::int8_t>(-s);
                signs_[(p * n_ + r) * n_ + q] = static_cast<std::int8_t>(-s);
                signs_[(r * n_ + q) * n_ + p] = static_cast<std::int8_t>(-s);
            }
        }
    }
}

Orientation OrderType::sign(std::size_t p, std::size_t q, std::size_t r) const {
    if (p >= n_ || q >= n_ || r >= n_) throw std::out_of_range("order type index");
    return static_cast<Orientation>(signs_[(p * n_ + q) * n_ + r]);
}

OrderType order_type(const PointSet& points) { return OrderType(points); }

bool same_order_type(const PointSet& s, const PointSet& t, std::span<const std::size_t> f) {
    if (s.size() != t.size()) throw std::invalid_argument("same_order_type: point sets differ in size");
    if (f.size() != s.size()) throw std::invalid_argument("same_order_type: bijection has the wrong length");
    std::vector<bool> hit(t.size(), false);
    for (auto image : f) {
        if (image >= t.size() || hit[image]) {
            throw std::invalid_argument("same_order_type: mapping is not a bijection");
        }
        hit[image] = true;
    }
    const std::size_t n = s.size();
    for (std::size_t p = 0; p < n; ++p) {
        for (std::size_t q = p + 1; q < n; ++q) {
            for (std::size_t r = q + 1; r < n; ++r) {
                if (s.orientation(p, q, r) != t.orientation(f[p], f[q], f[r])) return false;
            }
        }
    }
    return true;
}

} // namespace kcross
