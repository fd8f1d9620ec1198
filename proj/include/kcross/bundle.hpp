#pragma once

#include "kcross/graph.hpp"

#include <iosfwd>
#include <span>
#include <vector>

namespace kcross {

/// A pair (Y, Z) of disjoint vertex sets together with E(Y, Z).
struct Bundle {
    std::vector<VertexId> y;
    std::vector<VertexId> z;
    std::vector<EdgeIndex> edges;  // exactly bipartite_edges(g, y, z), ascending
    std::size_t size_floor = 0;    // min(|Y|, |Z|)
};

/// Sorts the vertex sets and fills in the edge list. Throws std::invalid_argument
/// when Y and Z overlap or either is empty.
Bundle make_bundle(const GeometricGraph& g, std::vector<VertexId> y, std::vector<VertexId> z);

/// Bundle JSON: {"bundles": [{"Y": [...], "Z": [...], "edges": [[u, v], ...]}, ...]}.
/// Edges are written as endpoint pairs so the file stays meaningful without edge indices.
void write_bundles_json(std::ostream& out, const GeometricGraph& g, std::span<const Bundle> bundles);

/// Rebuilds bundles from Y/Z ids; listed edges must agree with E(Y, Z) in g
/// (throws std::invalid_argument otherwise).
std::vector<Bundle> read_bundles_json(std::istream& in, const GeometricGraph& g);

} // namespace kcross
