#include "kcross/bundle.hpp"
#include "kcross/coloring.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <random>
#include <sstream>

using namespace kcross;

namespace {

std::vector<EdgeIndex> natural_order(const GeometricGraph& g) {
    std::vector<EdgeIndex> order(g.edge_count());
    std::iota(order.begin(), order.end(), 0);
    return order;
}

/// Vertices 0..4m-1 on a convex curve split into four consecutive arcs.
std::vector<Bundle> arc_bundles(const GeometricGraph& g, VertexId m) {
    std::vector<VertexId> arcs[4];
    for (VertexId v = 0; v < 4 * m; ++v) arcs[v / m].push_back(v);
    return {make_bundle(g, arcs[0], arcs[2]), make_bundle(g, arcs[1], arcs[3])};
}

} // namespace

TEST_CASE("EdgeColoring validation") {
    CHECK_THROWS_AS(EdgeColoring(1, {1, 1}), std::invalid_argument);
    CHECK_THROWS_AS(EdgeColoring(2, {1, 3}), std::invalid_argument);
    CHECK_THROWS_AS(EdgeColoring(2, {0, 1}), std::invalid_argument);
    CHECK_NOTHROW(EdgeColoring(3, {1, 2, 3}));
}

TEST_CASE("random_coloring") {
    auto empty = GeometricGraph(PointSet({{0, 0}, {1, 5}, {4, 2}}), {});
    CHECK(random_coloring(empty, 2, 1).size() == 0);
    CHECK_THROWS_AS(random_coloring(empty, 1, 1), std::invalid_argument);
    auto g = oracle::convex_complete(10);
    auto a = random_coloring(g, 3, 42);
    auto b = random_coloring(g, 3, 42);
    CHECK(a.colors() == b.colors());
    CHECK(a.colors() != random_coloring(g, 3, 43).colors());
    for (auto c : a.colors()) CHECK((c >= 1 && c <= 3));
}

TEST_CASE("derandomized coloring examples") {
    auto k4 = oracle::convex_complete(4);
    auto chi = derandomized_coloring(k4, 2, natural_order(k4));
    CHECK(coloring_stats(k4, chi).mono == 0);

    auto k8 = oracle::convex_complete(8);
    const auto crs = oracle::crossing_count(k8);
    REQUIRE(crs == 70);
    auto chi8 = derandomized_coloring(k8, 2, natural_order(k8));
    const auto mono = oracle::mono_count(k8, chi8.colors());
    CHECK(Rational(mono) <= Rational(crs, 2));
    CHECK(coloring_stats(k8, chi8).mono == mono);

    // Planar star: no crossings, so nothing can be monochromatic.
    auto star = GeometricGraph(PointSet({{0, 0}, {5, 1}, {1, 5}, {-4, 2}, {-2, -5}}), {{0, 1}, {0, 2}, {0, 3}, {0, 4}});
    auto chi_star = derandomized_coloring(star, 2);
    const auto st = coloring_stats(star, chi_star);
    CHECK(st.mono == 0);
    CHECK(st.vacuous);
    CHECK(st.ratio == 0);
}

TEST_CASE("derandomized coloring rejects a bad order") {
    auto k4 = oracle::convex_complete(4);
    std::vector<EdgeIndex> short_order{0, 1, 2};
    CHECK_THROWS_AS(derandomized_coloring(k4, 2, short_order), std::invalid_argument);
    std::vector<EdgeIndex> repeated{0, 1, 2, 3, 4, 4};
    CHECK_THROWS_AS(derandomized_coloring(k4, 2, repeated), std::invalid_argument);
}

TEST_CASE("derandomized guarantee holds for every order") {
    std::mt19937_64 rng(2024);
    for (int trial = 0; trial < 60; ++trial) {
        auto g = oracle::random_graph(12 + trial % 10, 0.5, rng);
        const std::uint32_t k = 2 + trial % 3;
        auto order = natural_order(g);
        std::shuffle(order.begin(), order.end(), rng);
        auto chi = derandomized_coloring(g, k, order);
        const auto crs = oracle::crossing_count(g);
        CHECK(Rational(oracle::mono_count(g, chi.colors())) <= Rational(crs, k));
    }
}

TEST_CASE("crossing_degree_order") {
    std::mt19937_64 rng(6);
    auto g = oracle::random_graph(15, 0.5, rng);
    const auto set = crossing_set(g);
    const auto order = crossing_degree_order(g, set);
    const auto partners = set.partners(g.edge_count());
    REQUIRE(order.size() == g.edge_count());
    for (std::size_t i = 1; i < order.size(); ++i) {
        const auto a = partners[order[i - 1]].size();
        const auto b = partners[order[i]].size();
        CHECK(a >= b);
        if (a == b) CHECK(order[i - 1] < order[i]);
    }
}

TEST_CASE("coloring_stats examples") {
    auto k6 = oracle::convex_complete(6);
    const auto crs = oracle::crossing_count(k6);
    auto one = EdgeColoring(2, std::vector<Color>(k6.edge_count(), 1));
    auto st = coloring_stats(k6, one);
    CHECK(st.mono == crs);
    CHECK(st.hetero == 0);
    CHECK(st.ratio == 1);

    std::vector<Color> rainbow(k6.edge_count());
    std::iota(rainbow.begin(), rainbow.end(), 1);
    st = coloring_stats(k6, EdgeColoring(static_cast<std::uint32_t>(k6.edge_count()), rainbow));
    CHECK(st.mono == 0);
    CHECK(st.hetero == crs);

    std::vector<Color> alternating;
    for (std::size_t e = 0; e < k6.edge_count(); ++e) alternating.push_back(1 + e % 2);
    st = coloring_stats(k6, EdgeColoring(2, alternating));
    CHECK(st.mono == oracle::mono_count(k6, alternating));
    CHECK(st.mono + st.hetero == st.total);
    CHECK(st.total == crs);
    CHECK(st.ratio == Rational(st.mono, st.total));

    CHECK_THROWS_AS(coloring_stats(k6, EdgeColoring(2, {1, 2})), std::invalid_argument);
}

TEST_CASE("permuting color labels keeps the statistics") {
    std::mt19937_64 rng(31);
    auto g = oracle::random_graph(14, 0.5, rng);
    auto chi = random_coloring(g, 3, 5);
    std::vector<Color> swapped;
    for (auto c : chi.colors()) swapped.push_back(c == 1 ? 3 : c == 3 ? 1 : 2);
    const auto a = coloring_stats(g, chi);
    const auto b = coloring_stats(g, EdgeColoring(3, swapped));
    CHECK(a.mono == b.mono);
    CHECK(a.hetero == b.hetero);
    CHECK(a.ratio == b.ratio);
}

TEST_CASE("bundle coloring on a single crossing") {
    auto k4 = oracle::convex_complete(4);
    std::vector<Bundle> bundles{make_bundle(k4, {0}, {2}), make_bundle(k4, {1}, {3})};
    auto sub = GeometricGraph(k4.vertices(), {{0, 2}, {1, 3}});
    std::vector<Bundle> diag{make_bundle(sub, {0}, {2}), make_bundle(sub, {1}, {3})};
    auto chi = bundle_coloring(sub, diag);
    CHECK(chi[0] == 1);
    CHECK(chi[1] == 2);
    CHECK(coloring_stats(sub, chi).mono == 0);

    auto full = bundle_coloring(k4, bundles);
    CHECK(full[*k4.edge_index(0, 2)] == 1);
    CHECK(full[*k4.edge_index(1, 3)] == 2);
}

TEST_CASE("bundle coloring on convex arc bundles") {
    const VertexId m = 3;
    auto g = oracle::convex_complete(4 * m);
    auto bundles = arc_bundles(g, m);
    for (auto e : bundles[0].edges)
        for (auto f : bundles[1].edges) CHECK(oracle::edges_cross(g, e, f));

    const auto set = crossing_set(g);
    auto chi = bundle_coloring(g, bundles);
    for (std::size_t i = 0; i < bundles.size(); ++i)
        for (auto e : bundles[i].edges) CHECK(chi[e] == i + 1);

    // mono <= mono on E' + (C1 + C2)/k
    std::vector<bool> in_bundle(g.edge_count(), false);
    for (const auto& b : bundles)
        for (auto e : b.edges) in_bundle[e] = true;
    std::uint64_t mono_prime = 0, rest = 0;
    for (const auto& [a, b] : set.pairs) {
        if (in_bundle[a] && in_bundle[b]) {
            if (chi[a] == chi[b]) ++mono_prime;
        } else {
            ++rest;
        }
    }
    const auto mono = oracle::mono_count(g, chi.colors());
    CHECK(Rational(mono) <= Rational(mono_prime) + Rational(rest, 2));
    CHECK(coloring_stats(g, chi, set).mono == mono);
}

TEST_CASE("bundle coloring errors") {
    auto k4 = oracle::convex_complete(4);
    std::vector<Bundle> shared{make_bundle(k4, {0}, {2}), make_bundle(k4, {0}, {2, 3})};
    CHECK_THROWS_AS(bundle_coloring(k4, shared), std::invalid_argument);
    std::vector<Bundle> ok{make_bundle(k4, {0}, {2}), make_bundle(k4, {1}, {3})};
    std::vector<EdgeIndex> bad_order{0};
    CHECK_THROWS_AS(bundle_coloring(k4, ok, bad_order), std::invalid_argument);
}

TEST_CASE("coloring file round trip") {
    auto g = oracle::convex_complete(6);
    auto chi = derandomized_coloring(g, 3);
    std::ostringstream out;
    write_coloring(out, g, chi);
    std::istringstream in(out.str());
    auto back = read_coloring(in, g, 3);
    CHECK(back.colors() == chi.colors());
    std::istringstream wrong("0 1 9\n");
    CHECK_THROWS(read_coloring(wrong, g, 3));
}

TEST_CASE("bundle JSON round trip") {
    auto g = oracle::convex_complete(12);
    auto bundles = arc_bundles(g, 3);
    std::ostringstream out;
    write_bundles_json(out, g, bundles);
    std::istringstream in(out.str());
    auto back = read_bundles_json(in, g);
    REQUIRE(back.size() == 2);
    CHECK(back[0].y == bundles[0].y);
    CHECK(back[1].edges == bundles[1].edges);
    CHECK(back[0].size_floor == 3);

    std::istringstream tampered(R"({"bundles":[{"Y":[0],"Z":[1],"edges":[[0,2]]}]})");
    CHECK_THROWS_AS(read_bundles_json(tampered, g), std::invalid_argument);
    CHECK_THROWS_AS(make_bundle(g, {0, 1}, {1, 2}), std::invalid_argument);
    CHECK_THROWS_AS(make_bundle(g, {}, {1, 2}), std::invalid_argument);
}
