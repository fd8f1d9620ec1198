#include "kcross/bundle.hpp"

#include <json.hpp>

#include <algorithm>
#include <istream>
#include <ostream>
#include <stdexcept>

namespace kcross {

Bundle make_bundle(const GeometricGraph& g, std::vector<VertexId> y, std::vector<VertexId> z) {
    if (y.empty() || z.empty()) throw std::invalid_argument("bundle with an empty side");
    std::sort(y.begin(), y.end());
    std::sort(z.begin(), z.end());
    if (std::adjacent_find(y.begin(), y.end()) != y.end() || std::adjacent_find(z.begin(), z.end()) != z.end()) {
        throw std::invalid_argument("bundle side lists a vertex twice");
    }
    Bundle b;
    b.edges = bipartite_edges(g, y, z);
    b.size_floor = std::min(y.size(), z.size());
    b.y = std::move(y);
    b.z = std::move(z);
    return b;
}

void write_bundles_json(std::ostream& out, const GeometricGraph& g, std::span<const Bundle> bundles) {
    nlohmann::json doc;
    doc["bundles"] = nlohmann::json::array();
    for (const auto& b : bundles) {
        nlohmann::json edges = nlohmann::json::array();
        for (auto e : b.edges) edges.push_back({g.edge(e).u, g.edge(e).v});
        doc["bundles"].push_back({{"Y", b.y}, {"Z", b.z}, {"edges", edges}});
    }
    out << doc.dump(2) << '\n';
}

std::vector<Bundle> read_bundles_json(std::istream& in, const GeometricGraph& g) {
    const auto doc = nlohmann::json::parse(in);
    std::vector<Bundle> bundles;
    for (const auto& item : doc.at("bundles")) {
        auto b = make_bundle(g, item.at("Y").get<std::vector<VertexId>>(), item.at("Z").get<std::vector<VertexId>>());
        if (item.contains("edges")) {
            std::vector<EdgeIndex> listed;
            for (const auto& pair : item["edges"]) {
                auto e = g.edge_index(pair.at(0).get<VertexId>(), pair.at(1).get<VertexId>());
                if (!e) throw std::invalid_argument("bundle file lists an edge missing from the graph");
                listed.push_back(*e);
            }
            std::sort(listed.begin(), listed.end());
            if (listed != b.edges) throw std::invalid_argument("bundle file edges disagree with E(Y, Z)");
        }
        bundles.push_back(std::move(b));
    }
    return bundles;
}

} // namespace kcross
