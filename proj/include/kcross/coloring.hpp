#pragma once

#include "kcross/graph.hpp"

#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

namespace kcross {

struct Bundle;

using Color = std::uint32_t;

/// Total map edge index -> color in {1..k}.
class EdgeColoring {
public:
    EdgeColoring() = default;

    /// Throws std::invalid_argument if k < 2 or any color lies outside {1..k}.
    EdgeColoring(std::uint32_t k, std::vector<Color> colors);

    std::uint32_t k() const noexcept { return k_; }
    std::size_t size() const noexcept { return colors_.size(); }
    Color operator[](EdgeIndex e) const { return colors_[e]; }
    const std::vector<Color>& colors() const noexcept { return colors_; }

private:
    std::uint32_t k_ = 2;
    std::vector<Color> colors_;
};

struct ColoringStats {
    std::uint64_t mono = 0;
    std::uint64_t hetero = 0;
    std::uint64_t total = 0;
    Rational ratio;       // mono / total; 0 when total == 0
    bool vacuous = false; // total == 0, ratio undefined
};

/// Each edge iid uniform over {1..k}; reproducible from the seed.
EdgeColoring random_coloring(const GeometricGraph& g, std::uint32_t k, std::uint64_t seed);

/// Edges sorted by descending number of crossing partners, ties by index.
std::vector<EdgeIndex> crossing_degree_order(const GeometricGraph& g, const CrossingSet& crossings);

/// Method of conditional expectations: each edge, in `order`, takes the color
/// shared by the fewest already-colored crossing partners (ties: smallest color).
/// Guarantees mono <= crs(G)/k for every order.
/// Throws std::invalid_argument if order is not a permutation of the edges.
EdgeColoring derandomized_coloring(const GeometricGraph& g, std::uint32_t k, std::span<const EdgeIndex> order);
EdgeColoring derandomized_coloring(const GeometricGraph& g, std::uint32_t k, std::span<const EdgeIndex> order,
                                   const CrossingSet& crossings);
/// Uses crossing_degree_order.
EdgeColoring derandomized_coloring(const GeometricGraph& g, std::uint32_t k);

/// Edges of bundle i get color i+1; the rest are colored greedily against every
/// already-colored partner, bundle edges included. `order` covers the non-bundle
/// edges (empty: crossing_degree_order restricted to them). Throws
/// std::invalid_argument when an edge belongs to two bundles.
EdgeColoring bundle_coloring(const GeometricGraph& g, std::span<const Bundle> bundles,
                             std::span<const EdgeIndex> order = {});
EdgeColoring bundle_coloring(const GeometricGraph& g, std::span<const Bundle> bundles,
                             std::span<const EdgeIndex> order, const CrossingSet& crossings);

/// Throws std::invalid_argument when the coloring does not cover every edge.
ColoringStats coloring_stats(const GeometricGraph& g, const EdgeColoring& coloring);
ColoringStats coloring_stats(const GeometricGraph& g, const EdgeColoring& coloring, const CrossingSet& crossings);

void write_coloring(std::ostream& out, const GeometricGraph& g, const EdgeColoring& coloring);
EdgeColoring read_coloring(std::istream& in, const GeometricGraph& g, std::uint32_t k);

} // namespace kcross
