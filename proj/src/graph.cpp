#include "kcross/graph.hpp"

#include <algorithm>
#include <future>
#include <sstream>
#include <stdexcept>

namespace kcross {

GeometricGraph::GeometricGraph(PointSet vertices, std::vector<Edge> edges)
    : vertices_(std::move(vertices)), edges_(std::move(edges)) {
    const std::size_t n = vertices_.size();
    index_.assign(n * n, -1);
    degree_.assign(n, 0);
    for (std::size_t i = 0; i < edges_.size(); ++i) {
        auto& e = edges_[i];
        if (e.u >= n || e.v >= n) {
            std::ostringstream msg;
            msg << "edge " << i << " (" << e.u << ", " << e.v << ") references a missing vertex";
            throw std::invalid_argument(msg.str());
        }
        if (e.u == e.v) {
            std::ostringstream msg;
            msg << "edge " << i << " is a loop at vertex " << e.u;
            throw std::invalid_argument(msg.str());
        }
        if (e.u > e.v) std::swap(e.u, e.v);
        auto& slot = index_[std::size_t{e.u} * n + e.v];
        if (slot >= 0) {
            std::ostringstream msg;
            msg << "duplicate edge (" << e.u << ", " << e.v << ") at indices " << slot << " and " << i;
            throw std::invalid_argument(msg.str());
        }
        slot = static_cast<std::int32_t>(i);
        index_[std::size_t{e.v} * n + e.u] = slot;
        ++degree_[e.u];
        ++degree_[e.v];
    }
}

bool GeometricGraph::has_edge(VertexId a, VertexId b) const { return edge_index(a, b).has_value(); }

std::optional<EdgeIndex> GeometricGraph::edge_index(VertexId a, VertexId b) const {
    const std::size_t n = vertices_.size();
    if (a >= n || b >= n) return std::nullopt;
    const auto slot = index_[std::size_t{a} * n + b];
    if (slot < 0) return std::nullopt;
    return static_cast<EdgeIndex>(slot);
}

bool GeometricGraph::edges_cross(EdgeIndex a, EdgeIndex b) const {
    const auto& ea = edges_[a];
    const auto& eb = edges_[b];
    return segments_cross(point(ea.u), point(ea.v), point(eb.u), point(eb.v));
}

std::vector<std::vector<EdgeIndex>> CrossingSet::partners(std::size_t edge_count) const {
    std::vector<std::vector<EdgeIndex>> out(edge_count);
    for (const auto& [a, b] : pairs) {
        out[a].push_back(b);
        out[b].push_back(a);
    }
    for (auto& list : out) std::sort(list.begin(), list.end());
    return out;
}

Rational density(const GeometricGraph& g) {
    if (g.vertex_count() < 2) throw std::invalid_argument("density needs at least two vertices");
    return Rational(BigInt(g.edge_count()), choose2(g.vertex_count()));
}

namespace {

void collect_rows(const GeometricGraph& g, std::size_t begin, std::size_t end,
                  std::vector<std::pair<EdgeIndex, EdgeIndex>>& out) {
    const std::size_t m = g.edge_count();
    for (std::size_t a = begin; a < end; ++a) {
        for (std::size_t b = a + 1; b < m; ++b) {
            if (g.edges_cross(static_cast<EdgeIndex>(a), static_cast<EdgeIndex>(b))) {
                out.emplace_back(static_cast<EdgeIndex>(a), static_cast<EdgeIndex>(b));
            }
        }
    }
}

} // namespace

CrossingSet crossing_set(const GeometricGraph& g, unsigned threads) {
    CrossingSet result;
    const std::size_t m = g.edge_count();
    if (threads <= 1 || m < 64) {
        collect_rows(g, 0, m, result.pairs);
    } else {
        // Rows are interleaved in blocks so every worker gets a similar triangle share.
        const std::size_t block = 16;
        const std::size_t blocks = (m + block - 1) / block;
        std::vector<std::vector<std::pair<EdgeIndex, EdgeIndex>>> parts(blocks);
        std::vector<std::future<void>> workers;
        for (unsigned t = 0; t < threads; ++t) {
            workers.push_back(std::async(std::launch::async, [&, t] {
                for (std::size_t b = t; b < blocks; b += threads) {
                    collect_rows(g, b * block, std::min(m, (b + 1) * block), parts[b]);
                }
            }));
        }
        for (auto& w : workers) w.get();
        for (auto& p : parts) result.pairs.insert(result.pairs.end(), p.begin(), p.end());
    }
    result.count = result.pairs.size();
    return result;
}

std::uint64_t count_crossings_among(const GeometricGraph& g, std::span<const EdgeIndex> edges) {
    std::uint64_t count = 0;
    for (std::size_t i = 0; i < edges.size(); ++i) {
        for (std::size_t j = i + 1; j < edges.size(); ++j) {
            if (g.edges_cross(edges[i], edges[j])) ++count;
        }
    }
    return count;
}

namespace {

std::vector<std::int8_t> membership(const GeometricGraph& g, std::span<const VertexId> x,
                                    std::span<const VertexId> y, const char* op) {
    std::vector<std::int8_t> side(g.vertex_count(), 0);
    for (auto v : x) {
        if (v >= g.vertex_count()) throw std::invalid_argument(std::string(op) + ": vertex out of range");
        side[v] = 1;
    }
    for (auto v : y) {
        if (v >= g.vertex_count()) throw std::invalid_argument(std::string(op) + ": vertex out of range");
        if (side[v] == 1) {
            std::ostringstream msg;
            msg << op << ": vertex " << v << " lies in both sets";
            throw std::invalid_argument(msg.str());
        }
        side[v] = 2;
    }
    return side;
}

} // namespace

std::vector<EdgeIndex> bipartite_edges(const GeometricGraph& g, std::span<const VertexId> x,
                                       std::span<const VertexId> y) {
    const auto side = membership(g, x, y, "bipartite_edges");
    std::vector<EdgeIndex> out;
    for (std::size_t i = 0; i < g.edge_count(); ++i) {
        const auto& e = g.edge(static_cast<EdgeIndex>(i));
        const auto su = side[e.u];
        const auto sv = side[e.v];
        if (su != 0 && sv != 0 && su != sv) out.push_back(static_cast<EdgeIndex>(i));
    }
    return out;
}

PairDensity pair_density(const GeometricGraph& g, std::span<const VertexId> a, std::span<const VertexId> b) {
    if (a.empty() || b.empty()) throw std::invalid_argument("pair_density: empty vertex set");
    membership(g, a, b, "pair_density");
    PairDensity d;
    d.a_size = a.size();
    d.b_size = b.size();
    for (auto u : a) {
        for (auto v : b) {
            if (g.has_edge(u, v)) ++d.edge_count;
        }
    }
    d.value = Rational(BigInt(d.edge_count), BigInt(d.a_size) * d.b_size);
    return d;
}

std::uint64_t induced_edge_count(const GeometricGraph& g, std::span<const VertexId> vertices) {
    std::uint64_t count = 0;
    for (std::size_t i = 0; i < vertices.size(); ++i) {
        for (std::size_t j = i + 1; j < vertices.size(); ++j) {
            if (g.has_edge(vertices[i], vertices[j])) ++count;
        }
    }
    return count;
}

} // namespace kcross
