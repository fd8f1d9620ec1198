#pragma once

#include "kcross/geometry.hpp"
#include "kcross/rational.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace kcross {

using EdgeIndex = std::uint32_t;

/// Unordered vertex pair, stored with u < v.
struct Edge {
    VertexId u = 0;
    VertexId v = 0;

    friend bool operator==(const Edge&, const Edge&) = default;
};

class GeometricGraph {
public:
    GeometricGraph() = default;

    /// Normalizes every edge to u < v. Throws std::invalid_argument on loops,
    /// duplicate edges or endpoints outside the vertex range.
    GeometricGraph(PointSet vertices, std::vector<Edge> edges);

    std::size_t vertex_count() const noexcept { return vertices_.size(); }
    std::size_t edge_count() const noexcept { return edges_.size(); }

    const PointSet& vertices() const noexcept { return vertices_; }
    const std::vector<Edge>& edges() const noexcept { return edges_; }
    const Edge& edge(EdgeIndex e) const { return edges_[e]; }
    const Point& point(VertexId v) const { return vertices_[v]; }

    bool has_edge(VertexId a, VertexId b) const;
    std::optional<EdgeIndex> edge_index(VertexId a, VertexId b) const;

    std::size_t degree(VertexId v) const { return degree_[v]; }

    /// Do the two edges cross as straight segments.
    bool edges_cross(EdgeIndex a, EdgeIndex b) const;

private:
    PointSet vertices_;
    std::vector<Edge> edges_;
    std::vector<std::int32_t> index_;  // n*n lookup, -1 when absent
    std::vector<std::size_t> degree_;
};

/// All crossing edge pairs (a < b), sorted lexicographically.
struct CrossingSet {
    std::vector<std::pair<EdgeIndex, EdgeIndex>> pairs;
    std::uint64_t count = 0;

    /// Per-edge list of crossing partners, ascending.
    std::vector<std::vector<EdgeIndex>> partners(std::size_t edge_count) const;
};

struct PairDensity {
    std::uint64_t a_size = 0;
    std::uint64_t b_size = 0;
    std::uint64_t edge_count = 0;
    Rational value;
};

/// |E| / C(|V|, 2). Throws std::invalid_argument for fewer than two vertices.
Rational density(const GeometricGraph& g);

/// Brute force over all edge pairs. `threads` > 1 splits the outer index range;
/// the result is identical to the sequential one.
CrossingSet crossing_set(const GeometricGraph& g, unsigned threads = 1);

/// Crossing pairs restricted to a subset of edges (indices refer to g).
std::uint64_t count_crossings_among(const GeometricGraph& g, std::span<const EdgeIndex> edges);

/// Edge indices (ascending) with one endpoint in x and the other in y.
/// Throws std::invalid_argument when x and y intersect.
std::vector<EdgeIndex> bipartite_edges(const GeometricGraph& g, std::span<const VertexId> x,
                                       std::span<const VertexId> y);

/// Throws std::invalid_argument for empty or overlapping sets.
PairDensity pair_density(const GeometricGraph& g, std::span<const VertexId> a, std::span<const VertexId> b);

/// Number of edges of g with both endpoints in `vertices`.
std::uint64_t induced_edge_count(const GeometricGraph& g, std::span<const VertexId> vertices);

} // namespace kcross
