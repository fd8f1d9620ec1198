#include "kcross/coloring.hpp"

#include "kcross/bundle.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <random>
#include <sstream>
#include <stdexcept>

namespace kcross {

EdgeColoring::EdgeColoring(std::uint32_t k, std::vector<Color> colors) : k_(k), colors_(std::move(colors)) {
    if (k_ < 2) throw std::invalid_argument("a coloring needs k >= 2");
    for (std::size_t e = 0; e < colors_.size(); ++e) {
        if (colors_[e] < 1 || colors_[e] > k_) {
            std::ostringstream msg;
            msg << "edge " << e << " has color " << colors_[e] << " outside 1.." << k_;
            throw std::invalid_argument(msg.str());
        }
    }
}

EdgeColoring random_coloring(const GeometricGraph& g, std::uint32_t k, std::uint64_t seed) {
    if (k < 2) throw std::invalid_argument("random_coloring: k must be at least 2");
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<Color> pick(1, k);
    std::vector<Color> colors(g.edge_count());
    for (auto& c : colors) c = pick(rng);
    return EdgeColoring(k, std::move(colors));
}

std::vector<EdgeIndex> crossing_degree_order(const GeometricGraph& g, const CrossingSet& crossings) {
    std::vector<std::uint64_t> degree(g.edge_count(), 0);
    for (const auto& [a, b] : crossings.pairs) {
        ++degree[a];
        ++degree[b];
    }
    std::vector<EdgeIndex> order(g.edge_count());
    for (std::size_t e = 0; e < order.size(); ++e) order[e] = static_cast<EdgeIndex>(e);
    std::stable_sort(order.begin(), order.end(),
                     [&](EdgeIndex a, EdgeIndex b) { return degree[a] > degree[b]; });
    return order;
}

namespace {

// Colors every still-uncolored edge in `order`; 0 marks uncolored.
void greedy_complete(std::vector<Color>& colors, std::uint32_t k, std::span<const EdgeIndex> order,
                     const std::vector<std::vector<EdgeIndex>>& partners) {
    std::vector<std::uint64_t> conflicts(k + 1);
    for (auto e : order) {
        std::fill(conflicts.begin(), conflicts.end(), 0);
        for (auto f : partners[e]) ++conflicts[colors[f]];
        Color best = 1;
        for (Color c = 2; c <= k; ++c) {
            if (conflicts[c] < conflicts[best]) best = c;
        }
        colors[e] = best;
    }
}

void require_permutation(std::span<const EdgeIndex> order, const std::vector<bool>& eligible, const char* op) {
    std::vector<bool> seen(eligible.size(), false);
    std::size_t expected = std::count(eligible.begin(), eligible.end(), true);
    for (auto e : order) {
        if (e >= eligible.size() || !eligible[e] || seen[e]) {
            std::ostringstream msg;
            msg << op << ": edge order is not a permutation (offending entry " << e << ")";
            throw std::invalid_argument(msg.str());
        }
        seen[e] = true;
    }
    if (order.size() != expected) {
        throw std::invalid_argument(std::string(op) + ": edge order does not cover every edge");
    }
}

} // namespace

EdgeColoring derandomized_coloring(const GeometricGraph& g, std::uint32_t k, std::span<const EdgeIndex> order,
                                   const CrossingSet& crossings) {
    if (k < 2) throw std::invalid_argument("derandomized_coloring: k must be at least 2");
    require_permutation(order, std::vector<bool>(g.edge_count(), true), "derandomized_coloring");
    std::vector<Color> colors(g.edge_count(), 0);
    greedy_complete(colors, k, order, crossings.partners(g.edge_count()));
    return EdgeColoring(k, std::move(colors));
}

EdgeColoring derandomized_coloring(const GeometricGraph& g, std::uint32_t k, std::span<const EdgeIndex> order) {
    return derandomized_coloring(g, k, order, crossing_set(g));
}

EdgeColoring derandomized_coloring(const GeometricGraph& g, std::uint32_t k) {
    const auto crossings = crossing_set(g);
    const auto order = crossing_degree_order(g, crossings);
    return derandomized_coloring(g, k, order, crossings);
}

EdgeColoring bundle_coloring(const GeometricGraph& g, std::span<const Bundle> bundles,
                             std::span<const EdgeIndex> order, const CrossingSet& crossings) {
    const auto k = static_cast<std::uint32_t>(bundles.size());
    if (k < 2) throw std::invalid_argument("bundle_coloring: needs at least two bundles");
    std::vector<Color> colors(g.edge_count(), 0);
    for (std::uint32_t i = 0; i < k; ++i) {
        for (auto e : bundles[i].edges) {
            if (e >= g.edge_count()) throw std::invalid_argument("bundle_coloring: edge index out of range");
            if (colors[e] != 0) {
                const auto& edge = g.edge(e);
                std::ostringstream msg;
                msg << "bundle_coloring: edge " << e << " (" << edge.u << ", " << edge.v << ") lies in bundles "
                    << colors[e] << " and " << (i + 1);
                throw std::invalid_argument(msg.str());
            }
            colors[e] = i + 1;
        }
    }
    std::vector<bool> rest(g.edge_count());
    for (std::size_t e = 0; e < rest.size(); ++e) rest[e] = colors[e] == 0;

    std::vector<EdgeIndex> default_order;
    if (order.empty()) {
        for (auto e : crossing_degree_order(g, crossings)) {
            if (rest[e]) default_order.push_back(e);
        }
        order = default_order;
    }
    require_permutation(order, rest, "bundle_coloring");
    greedy_complete(colors, k, order, crossings.partners(g.edge_count()));
    return EdgeColoring(k, std::move(colors));
}

EdgeColoring bundle_coloring(const GeometricGraph& g, std::span<const Bundle> bundles,
                             std::span<const EdgeIndex> order) {
    return bundle_coloring(g, bundles, order, crossing_set(g));
}

ColoringStats coloring_stats(const GeometricGraph& g, const EdgeColoring& coloring, const CrossingSet& crossings) {
    if (coloring.size() != g.edge_count()) {
        std::ostringstream msg;
        msg << "coloring covers " << coloring.size() << " of " << g.edge_count() << " edges";
        throw std::invalid_argument(msg.str());
    }
    ColoringStats stats;
    for (const auto& [a, b] : crossings.pairs) {
        if (coloring[a] == coloring[b]) ++stats.mono;
    }
    stats.total = crossings.count;
    stats.hetero = stats.total - stats.mono;
    stats.vacuous = stats.total == 0;
    stats.ratio = stats.vacuous ? Rational(0) : Rational(BigInt(stats.mono), BigInt(stats.total));
    return stats;
}

ColoringStats coloring_stats(const GeometricGraph& g, const EdgeColoring& coloring) {
    return coloring_stats(g, coloring, crossing_set(g));
}

void write_coloring(std::ostream& out, const GeometricGraph& g, const EdgeColoring& coloring) {
    for (std::size_t e = 0; e < g.edge_count(); ++e) {
        const auto& edge = g.edge(static_cast<EdgeIndex>(e));
        out << edge.u << ' ' << edge.v << ' ' << coloring[static_cast<EdgeIndex>(e)] << '\n';
    }
}

EdgeColoring read_coloring(std::istream& in, const GeometricGraph& g, std::uint32_t k) {
    std::vector<Color> colors(g.edge_count(), 0);
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        std::istringstream fields(line);
        long long u = 0, v = 0, c = 0;
        if (!(fields >> u)) continue;
        if (!(fields >> v >> c) || u < 0 || v < 0 || c < 1) {
            throw std::invalid_argument("coloring line " + std::to_string(line_no) + " is malformed");
        }
        auto e = g.edge_index(static_cast<VertexId>(u), static_cast<VertexId>(v));
        if (!e) throw std::invalid_argument("coloring line " + std::to_string(line_no) + " names a missing edge");
        colors[*e] = static_cast<Color>(c);
    }
    for (std::size_t e = 0; e < colors.size(); ++e) {
        if (colors[e] == 0) throw std::invalid_argument("coloring leaves edge " + std::to_string(e) + " uncolored");
    }
    return EdgeColoring(k, std::move(colors));
}

} // namespace kcross
