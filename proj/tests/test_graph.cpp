#include "kcross/generate.hpp"
#include "kcross/graph.hpp"
#include "kcross/io.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <algorithm>
#include <random>
#include <sstream>

using namespace kcross;

namespace {

GeometricGraph convex_k4() { return oracle::convex_complete(4); }

GeometricGraph with_edges(std::vector<Point> pts, std::vector<Edge> edges) {
    return GeometricGraph(PointSet(std::move(pts)), std::move(edges));
}

} // namespace

TEST_CASE("graph validation") {
    std::vector<Point> pts{{0, 0}, {3, 1}, {1, 4}};
    CHECK_THROWS_AS(with_edges(pts, {{0, 0}}), std::invalid_argument);
    CHECK_THROWS_AS(with_edges(pts, {{0, 1}, {1, 0}}), std::invalid_argument);
    CHECK_THROWS_AS(with_edges(pts, {{0, 3}}), std::invalid_argument);
    auto g = with_edges(pts, {{2, 0}});
    CHECK(g.edge(0) == Edge{0, 2});
    CHECK(g.has_edge(2, 0));
    CHECK(g.edge_index(0, 2) == 0);
    CHECK_FALSE(g.edge_index(0, 1).has_value());
    CHECK(g.degree(0) == 1);
    CHECK(g.degree(1) == 0);
}

TEST_CASE("density examples") {
    CHECK(density(oracle::convex_complete(5)) == 1);
    CHECK(density(with_edges({{0, 0}, {3, 1}, {1, 4}, {5, 5}, {7, 2}}, {})) == 0);
    CHECK(density(with_edges({{0, 0}, {3, 1}, {1, 4}, {5, 7}}, {{0, 1}, {1, 2}, {2, 3}})) == Rational(1, 2));
    CHECK_THROWS_AS(density(with_edges({{0, 0}}, {})), std::invalid_argument);
}

TEST_CASE("crossing_set on convex complete graphs") {
    auto k4 = convex_k4();
    auto set = crossing_set(k4);
    CHECK(set.count == 1);
    REQUIRE(set.pairs.size() == 1);
    const auto [a, b] = set.pairs[0];
    CHECK(k4.edge(a) == Edge{0, 2});
    CHECK(k4.edge(b) == Edge{1, 3});
    for (std::size_t n = 4; n <= 12; ++n) {
        CHECK(crossing_set(oracle::convex_complete(n)).count == choose(n, 4));
    }
}

TEST_CASE("crossing_set matches the parametric oracle") {
    std::mt19937_64 rng(99);
    for (int trial = 0; trial < 40; ++trial) {
        auto pts = oracle::random_points(10, 500, rng);
        std::vector<Edge> all;
        for (VertexId u = 0; u < 10; ++u)
            for (VertexId v = u + 1; v < 10; ++v) all.push_back({u, v});
        std::shuffle(all.begin(), all.end(), rng);
        all.resize(15);
        GeometricGraph g(PointSet(pts), all);
        const auto set = crossing_set(g);
        CHECK(set.count == oracle::crossing_count(g));
        CHECK(set.count == set.pairs.size());
        for (const auto& [a, b] : set.pairs) {
            CHECK(a < b);
            CHECK(g.edges_cross(a, b));
        }
        CHECK(std::is_sorted(set.pairs.begin(), set.pairs.end()));
    }
}

TEST_CASE("crossing count is invariant under edge permutation and positive affine maps") {
    std::mt19937_64 rng(4);
    for (int trial = 0; trial < 10; ++trial) {
        auto g = oracle::random_graph(14, 0.6, rng);
        auto edges = g.edges();
        std::shuffle(edges.begin(), edges.end(), rng);
        GeometricGraph permuted(g.vertices(), edges);
        CHECK(crossing_set(permuted).count == crossing_set(g).count);
        std::vector<Point> img;
        for (const auto& p : g.vertices().points()) img.push_back({p.x - 2 * p.y + 9, 3 * p.x + p.y});
        GeometricGraph mapped(PointSet(img), g.edges());
        CHECK(crossing_set(mapped).count == crossing_set(g).count);
    }
}

TEST_CASE("parallel crossing enumeration equals sequential") {
    std::mt19937_64 rng(8);
    auto g = oracle::random_graph(30, 0.5, rng);
    const auto seq = crossing_set(g, 1);
    for (unsigned threads : {2u, 3u, 8u}) {
        const auto par = crossing_set(g, threads);
        CHECK(par.count == seq.count);
        CHECK(par.pairs == seq.pairs);
    }
}

TEST_CASE("partners lists") {
    auto g = oracle::convex_complete(6);
    const auto set = crossing_set(g);
    const auto partners = set.partners(g.edge_count());
    std::size_t total = 0;
    for (std::size_t e = 0; e < partners.size(); ++e) {
        CHECK(std::is_sorted(partners[e].begin(), partners[e].end()));
        total += partners[e].size();
    }
    CHECK(total == 2 * set.count);
}

TEST_CASE("dense random instances have crossings") {
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        GeneratorSpec spec;
        spec.n = 20;
        spec.density = Rational(1, 2);
        spec.seed = seed;
        CHECK(crossing_set(generate(spec)).count > 0);
    }
}

TEST_CASE("bipartite_edges examples") {
    auto k4 = convex_k4();
    std::vector<VertexId> x{0, 1}, y{2, 3};
    CHECK(bipartite_edges(k4, x, y).size() == 4);
    auto path = with_edges({{0, 0}, {3, 1}, {1, 4}, {5, 7}}, {{0, 1}, {2, 3}});
    std::vector<VertexId> a{0, 1}, b{2, 3};
    CHECK(bipartite_edges(path, a, b).empty());
    std::vector<VertexId> left{0, 2}, right{1, 3};
    CHECK(bipartite_edges(path, left, right).size() == 2);
    std::vector<VertexId> overlap{1, 2};
    CHECK_THROWS_AS(bipartite_edges(k4, x, overlap), std::invalid_argument);
    CHECK(count_crossings_among(k4, bipartite_edges(k4, x, y)) == 1);
}

TEST_CASE("pair_density examples") {
    auto k4 = convex_k4();
    std::vector<VertexId> a{0, 1}, b{2, 3};
    auto pd = pair_density(k4, a, b);
    CHECK(pd.value == 1);
    CHECK(pd.edge_count == 4);
    auto sparse = with_edges({{0, 0}, {3, 1}, {1, 4}, {5, 7}}, {{0, 1}, {2, 3}});
    CHECK(pair_density(sparse, a, b).value == 0);
    auto half = with_edges({{0, 0}, {3, 1}, {1, 4}, {5, 7}}, {{0, 2}, {1, 3}});
    pd = pair_density(half, a, b);
    CHECK(pd.value == Rational(1, 2));
    CHECK(pd.value == Rational(pd.edge_count, pd.a_size * pd.b_size));
    std::vector<VertexId> none;
    CHECK_THROWS_AS(pair_density(k4, none, b), std::invalid_argument);
    CHECK_THROWS_AS(pair_density(k4, a, a), std::invalid_argument);
    std::vector<VertexId> all{0, 1, 2, 3};
    CHECK(induced_edge_count(k4, all) == 6);
    CHECK(induced_edge_count(half, a) == 0);
}

TEST_CASE("graph file round trip") {
    std::mt19937_64 rng(12);
    auto g = oracle::random_graph(9, 0.5, rng);
    std::ostringstream out;
    write_graph(out, g);
    std::istringstream in(out.str());
    auto back = read_graph(in);
    CHECK(back.vertices().points() == g.vertices().points());
    CHECK(back.edges() == g.edges());

    std::istringstream missing("0 0\n1 2\nEDGES\n0 5\n");
    CHECK_THROWS(read_graph(missing));
}
