#include "kcross/certificate.hpp"
#include "kcross/generate.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <random>

using namespace kcross;

namespace {

std::vector<VertexId> ids(VertexId from, VertexId to) {
    std::vector<VertexId> out;
    for (VertexId v = from; v < to; ++v) out.push_back(v);
    return out;
}

/// The two diagonals of a convex quadrilateral, one bundle each.
struct XInstance {
    GeometricGraph g{PointSet({{0, 0}, {4, 0}, {4, 4}, {0, 4}}), {{0, 2}, {1, 3}}};
    std::vector<Bundle> bundles{make_bundle(g, {0}, {2}), make_bundle(g, {1}, {3})};
};

std::vector<Bundle> arc_bundles(const GeometricGraph& g, VertexId m) {
    return {make_bundle(g, ids(0, m), ids(2 * m, 3 * m)), make_bundle(g, ids(m, 2 * m), ids(3 * m, 4 * m))};
}

Certificate counts_only(std::uint32_t k, Rational c2, Rational c3, std::uint64_t gprime, std::uint64_t c1,
                        std::uint64_t c2_pairs) {
    Certificate cert;
    cert.k = k;
    cert.c2 = c2;
    cert.c3 = c3;
    cert.crs_gprime = gprime;
    cert.c1_pairs = c1;
    cert.c2_pairs = c2_pairs;
    return cert;
}

} // namespace

TEST_CASE("verify_conditions on a single X") {
    XInstance x;
    Constants c{Rational(1, 4), Rational(1, 16), Rational(1, 1024)};
    auto report = verify_conditions(x.g, x.bundles, c);
    CHECK(report.passed());
    CHECK(report.s == std::vector<std::uint64_t>{0, 0});
    CHECK(report.edge_counts == std::vector<std::uint64_t>{1, 1});
    CHECK(report.failures.empty());

    Constants greedy{Rational(1, 2), Rational(1, 16), Rational(1, 1024)};
    report = verify_conditions(x.g, x.bundles, greedy);
    CHECK_FALSE(report.a);
    CHECK_FALSE(report.passed());
    CHECK_FALSE(report.failures.empty());

    Constants heavy{Rational(1, 4), Rational(1, 8), Rational(1, 1024)};
    CHECK_FALSE(verify_conditions(x.g, x.bundles, heavy).b);
}

TEST_CASE("verify_conditions reports a non-crossing inter-bundle pair") {
    auto g = oracle::convex_complete(6);
    // 0-3 crosses 1-4 but 0-3 and 4-5 share no interior point.
    std::vector<Bundle> bundles{make_bundle(g, {0}, {3}), make_bundle(g, {4}, {1, 5})};
    auto report = verify_conditions(g, bundles, Constants{Rational(1, 6), Rational(1, 36), Rational(1, 100000)});
    CHECK_FALSE(report.c);
    REQUIRE(report.c_witness.has_value());
    const auto [e, f] = *report.c_witness;
    CHECK_FALSE(oracle::edges_cross(g, e, f));
    CHECK(((g.edge(e) == Edge{0, 3}) || (g.edge(f) == Edge{0, 3})));
}

TEST_CASE("verify_conditions input errors") {
    XInstance x;
    Constants c{Rational(1, 4), Rational(1, 16), Rational(1, 1024)};
    std::vector<Bundle> one{x.bundles[0]};
    CHECK_THROWS_AS(verify_conditions(x.g, one, c), std::invalid_argument);
    std::vector<Bundle> shared{x.bundles[0], make_bundle(x.g, {0, 1}, {2})};
    CHECK_THROWS_AS(verify_conditions(x.g, shared, c), std::invalid_argument);
}

TEST_CASE("condition counts on convex K24 arc bundles") {
    auto g = oracle::convex_complete(24);
    auto bundles = arc_bundles(g, 6);
    auto c = certificate_constants(g, bundles);
    auto report = verify_conditions(g, bundles, c);
    CHECK(report.passed());
    for (std::size_t i = 0; i < 2; ++i) {
        CHECK(report.s[i] == oracle::crossing_count_among(g, bundles[i].edges));
        CHECK(report.edge_counts[i] == 36);
    }
    // Two arcs of 6 in convex position: a pair of chords crosses iff its endpoints interleave.
    CHECK(report.s[0] == 15 * 15);
}

TEST_CASE("max_feasible_constants") {
    XInstance x;
    auto c = max_feasible_constants(x.g, x.bundles);
    CHECK(c.c1 == Rational(1, 4));
    CHECK(c.c2 == Rational(1, 16));
    CHECK(c.c3 == Rational(1, 512));
    auto strict = certificate_constants(x.g, x.bundles);
    CHECK(strict.c3 < strict.c2 * strict.c2 / 2);
    CHECK(strict.c3 == Rational(1, 512) - Rational(1, 1024));
    CHECK(verify_conditions(x.g, x.bundles, strict).passed());

    // A bundle whose edges all cross each other still leaves a gap: s <= C(|E|,2) < |E|^2/2.
    GeometricGraph pair(PointSet({{0, 0}, {4, 4}, {0, 4}, {4, 0}, {10, 1}, {14, 5}, {10, 5}, {14, 2}}),
                        {{0, 1}, {2, 3}, {4, 5}, {6, 7}});
    std::vector<Bundle> crossing_inside{make_bundle(pair, {0, 2}, {1, 3}), make_bundle(pair, {4, 6}, {5, 7})};
    REQUIRE(crossing_inside[0].edges.size() == 2);
    auto tight = max_feasible_constants(pair, crossing_inside);
    CHECK(tight.c3 > 0);
    CHECK(tight.c3 == Rational(4, 2 * 4096) - Rational(1, 4096));

    GeometricGraph sparse(PointSet({{0, 0}, {4, 0}, {4, 4}, {0, 4}}), {{0, 2}});
    std::vector<Bundle> degenerate{make_bundle(sparse, {0}, {2}), make_bundle(sparse, {1}, {3})};
    CHECK_THROWS_AS(max_feasible_constants(sparse, degenerate), CertificateError);
}

TEST_CASE("max_feasible_constants matches an independent recount") {
    GeneratorSpec spec;
    spec.n = 16;
    spec.density = Rational(3, 4);
    spec.seed = 5;
    auto g = generate(spec);
    std::vector<Bundle> bundles{make_bundle(g, {0, 1, 2}, {3, 4, 5}), make_bundle(g, {6, 7, 8}, {9, 10, 11})};
    for (const auto& b : bundles) REQUIRE_FALSE(b.edges.empty());
    std::uint64_t max_s = 0;
    std::size_t min_e = g.edge_count();
    for (const auto& b : bundles) {
        std::vector<EdgeIndex> e;
        for (auto y : b.y)
            for (auto z : b.z)
                if (auto idx = g.edge_index(y, z)) e.push_back(*idx);
        min_e = std::min(min_e, e.size());
        max_s = std::max(max_s, oracle::crossing_count_among(g, e));
    }
    const BigInt n = 16;
    Rational c2(BigInt(min_e), n * n);
    Rational c3 = c2 * c2 / 2 - Rational(BigInt(max_s), n * n * n * n);
    if (c3 > 0) {
        auto c = max_feasible_constants(g, bundles);
        CHECK(c.c1 == Rational(3, 16));
        CHECK(c.c2 == c2);
        CHECK(c.c3 == c3);
    }
}

TEST_CASE("c prime and the bound") {
    CHECK(c_prime_from(2, Rational(1, 10), Rational(1, 1000)) == Rational(1, 18));
    auto cert = counts_only(2, Rational(1, 10), Rational(1, 1000), 50, 30, 20);
    CHECK(bound_from_certificate(cert) == Rational(1, 2) - Rational(1, 18) * Rational(50, 100));
    auto isolated = counts_only(2, Rational(1, 10), Rational(1, 1000), 50, 0, 0);
    CHECK(bound_from_certificate(isolated) == Rational(1, 2) - Rational(1, 18));
    CHECK(bundle_ratio_cap(2, Rational(1, 10), Rational(1, 1000)) == Rational(1, 2) - Rational(1, 18));
    CHECK(bundle_ratio_cap(3, Rational(1, 7), Rational(1, 500)) ==
          Rational(1, 3) - c_prime_from(3, Rational(1, 7), Rational(1, 500)));

    CHECK_THROWS_AS(c_prime_from(2, Rational(1, 10), Rational(0)), CertificateError);
    CHECK_THROWS_AS(c_prime_from(2, Rational(1, 10), Rational(1, 200)), CertificateError);
    CHECK_THROWS_AS(c_prime_from(1, Rational(1, 10), Rational(1, 1000)), CertificateError);
    CHECK_THROWS_AS(bound_from_certificate(counts_only(2, Rational(1, 10), Rational(1, 1000), 0, 5, 5)),
                    CertificateError);
}

TEST_CASE("bound improves as c3 grows") {
    const Rational c2(1, 10);
    Rational previous = 1;
    for (int i = 1; i < 50; ++i) {
        const Rational c3 = c2 * c2 / 2 * Rational(i, 50);
        const Rational bound = bound_from_certificate(counts_only(3, c2, c3, 40, 25, 35));
        CHECK(bound < previous);
        CHECK(bound < Rational(1, 3));
        previous = bound;
    }
}

TEST_CASE("make_certificate on arc bundles") {
    auto g = oracle::convex_complete(16);
    auto bundles = arc_bundles(g, 4);
    balance_bundles(g, bundles);
    const auto set = crossing_set(g);
    auto chi = bundle_coloring(g, bundles, {}, set);
    auto cert = make_certificate(g, bundles, chi, set);
    CHECK(cert.conditions_passed);
    CHECK(cert.crs_gprime + cert.c1_pairs + cert.c2_pairs == set.count);
    CHECK(cert.c > 0);
    CHECK(cert.bound == Rational(1, 2) - cert.c);
    CHECK(cert.bound == bound_from_certificate(cert));
    CHECK(cert.mono == oracle::mono_count(g, chi.colors()));
    CHECK(cert.achieved_ratio == Rational(cert.mono, cert.crossings));
    CHECK(cert.bound_holds == (cert.achieved_ratio <= cert.bound));
    CHECK(cert.bound_holds);
}

TEST_CASE("end_to_end on convex complete graphs") {
    auto k24 = oracle::convex_complete(24);
    auto r2 = end_to_end(k24, 2);
    CHECK(r2.certificate.bound_holds);
    CHECK(r2.certificate.c > 0);
    CHECK(r2.stats.ratio < Rational(1, 2));
    CHECK(r2.stats.mono == oracle::mono_count(k24, r2.coloring.colors()));

    auto k30 = oracle::convex_complete(30);
    auto r3 = end_to_end(k30, 3);
    CHECK(r3.certificate.bound_holds);
    CHECK(r3.stats.ratio < Rational(1, 3));
    CHECK(r3.stats.ratio <= r3.certificate.bound);
}

TEST_CASE("end_to_end on a crossing-free graph") {
    GeometricGraph star(PointSet({{0, 0}, {5, 1}, {1, 5}, {-4, 2}, {-2, -5}}), {{0, 1}, {0, 2}, {0, 3}, {0, 4}});
    try {
        end_to_end(star, 2);
        FAIL("vacuous instance accepted");
    } catch (const PipelineError& e) {
        CHECK(e.stage() == "input");
        CHECK(std::string(e.what()).find("vacuous instance") != std::string::npos);
    }
}
