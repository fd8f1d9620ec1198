#include "kcross/certificate.hpp"

#include <algorithm>
#include <sstream>

namespace kcross {

namespace {

void require_exclusive_edges(const GeometricGraph& g, std::span<const Bundle> bundles) {
    if (bundles.size() < 2) throw std::invalid_argument("need at least two bundles");
    std::vector<std::int64_t> owner(g.edge_count(), -1);
    for (std::size_t i = 0; i < bundles.size(); ++i) {
        for (auto e : bundles[i].edges) {
            if (e >= g.edge_count()) throw std::invalid_argument("bundle edge index out of range");
            if (owner[e] >= 0) {
                std::ostringstream msg;
                msg << "edge " << e << " belongs to bundles " << owner[e] << " and " << i;
                throw std::invalid_argument(msg.str());
            }
            owner[e] = static_cast<std::int64_t>(i);
        }
    }
}

} // namespace

ConditionReport verify_conditions(const GeometricGraph& g, std::span<const Bundle> bundles, const Constants& constants) {
    require_exclusive_edges(g, bundles);
    const BigInt n = g.vertex_count();
    ConditionReport report;
    report.a = report.b = report.c = report.d = true;

    const Rational size_floor = constants.c1 * n;
    const Rational edge_floor = constants.c2 * n * n;
    const Rational s_cap = (constants.c2 * constants.c2 / 2 - constants.c3) * n * n * n * n;
    for (std::size_t i = 0; i < bundles.size(); ++i) {
        const auto& b = bundles[i];
        const auto expected = bipartite_edges(g, b.y, b.z);
        if (expected != b.edges) throw std::invalid_argument("bundle " + std::to_string(i) + " edges differ from E(Y, Z)");
        if (Rational(BigInt(b.y.size())) < size_floor || Rational(BigInt(b.z.size())) < size_floor) {
            report.a = false;
            report.failures.push_back("(a) bundle " + std::to_string(i) + " has a side below c1 n");
        }
        report.edge_counts.push_back(b.edges.size());
        if (Rational(BigInt(b.edges.size())) < edge_floor) {
            report.b = false;
            report.failures.push_back("(b) bundle " + std::to_string(i) + " has fewer than c2 n^2 edges");
        }
        const auto s = count_crossings_among(g, b.edges);
        report.s.push_back(s);
        if (Rational(BigInt(s)) > s_cap) {
            report.d = false;
            report.failures.push_back("(d) bundle " + std::to_string(i) + " has s_i above (c2^2/2 - c3) n^4");
        }
    }
    for (std::size_t i = 0; i < bundles.size() && report.c; ++i) {
        for (std::size_t j = i + 1; j < bundles.size() && report.c; ++j) {
            for (auto e : bundles[i].edges) {
                for (auto f : bundles[j].edges) {
                    if (!g.edges_cross(e, f)) {
                        report.c = false;
                        report.c_witness = std::make_pair(e, f);
                        std::ostringstream msg;
                        msg << "(c) edges " << e << " and " << f << " of bundles " << i << " and " << j
                            << " do not cross";
                        report.failures.push_back(msg.str());
                        break;
                    }
                }
                if (!report.c) break;
            }
        }
    }
    return report;
}

Constants max_feasible_constants(const GeometricGraph& g, std::span<const Bundle> bundles) {
    if (bundles.empty()) throw CertificateError("no bundles");
    const BigInt n = g.vertex_count();
    std::size_t min_side = g.vertex_count();
    std::size_t min_edges = g.edge_count() + 1;
    std::uint64_t max_s = 0;
    for (const auto& b : bundles) {
        min_side = std::min({min_side, b.y.size(), b.z.size()});
        min_edges = std::min(min_edges, b.edges.size());
        max_s = std::max(max_s, count_crossings_among(g, b.edges));
    }
    if (min_edges == 0) throw CertificateError("a bundle has no edges; condition (b) needs positive edge mass");
    Constants c;
    c.c1 = Rational(BigInt(min_side), n);
    c.c2 = Rational(BigInt(min_edges), n * n);
    c.c3 = c.c2 * c.c2 / 2 - Rational(BigInt(max_s), n * n * n * n);
    if (c.c3 <= 0) {
        std::ostringstream msg;
        msg << "c3 = " << to_fraction_string(c.c3) << " <= 0: max s_i = " << max_s
            << " leaves no gap below c2^2 n^4 / 2 = " << to_fraction_string(c.c2 * c.c2 / 2 * n * n * n * n);
        throw CertificateError(msg.str());
    }
    return c;
}

Constants certificate_constants(const GeometricGraph& g, std::span<const Bundle> bundles) {
    auto c = max_feasible_constants(g, bundles);
    if (c.c3 == c.c2 * c.c2 / 2) {
        // Every s_i is 0. A quarter crossing of slack keeps 0 < c3 < c2^2/2 even for single-edge bundles.
        const BigInt n = g.vertex_count();
        c.c3 -= Rational(1, 4 * n * n * n * n);
    }
    return c;
}

Rational c_prime_from(std::uint32_t k, const Rational& c2, const Rational& c3) {
    if (k < 2) throw CertificateError("k must be at least 2");
    if (c3 <= 0) throw CertificateError("c3 must be positive");
    if (c3 >= c2 * c2 / 2) throw CertificateError("c3 must be below c2^2/2");
    return (c3 - c3 / k) / (Rational(k) * c2 * c2 / 2 - c3);
}

Rational bundle_ratio_cap(std::uint32_t k, const Rational& c2, const Rational& c3) {
    c_prime_from(k, c2, c3);
    const Rational half = c2 * c2 / 2;
    return (half - c3) / (Rational(k) * (half - c3 / k));
}

Rational bound_from_certificate(const Certificate& cert) {
    const Rational c_prime = c_prime_from(cert.k, cert.c2, cert.c3);
    if (cert.crs_gprime == 0) throw CertificateError("bundle edges have no crossings");
    const Rational c = c_prime * BigInt(cert.crs_gprime) /
                       (BigInt(cert.crs_gprime) + BigInt(cert.c1_pairs) + BigInt(cert.c2_pairs));
    return Rational(1, cert.k) - c;
}

Certificate make_certificate(const GeometricGraph& g, std::span<const Bundle> bundles, const EdgeColoring& coloring,
                             const CrossingSet& crossings) {
    Certificate cert;
    cert.k = static_cast<std::uint32_t>(bundles.size());
    cert.n = g.vertex_count();
    const auto constants = certificate_constants(g, bundles);
    cert.c1 = constants.c1;
    cert.c2 = constants.c2;
    cert.c3 = constants.c3;
    const auto report = verify_conditions(g, bundles, constants);
    cert.s = report.s;
    cert.conditions_passed = report.passed();

    std::vector<bool> in_bundle(g.edge_count(), false);
    for (const auto& b : bundles) {
        for (auto e : b.edges) in_bundle[e] = true;
    }
    for (const auto& [a, b] : crossings.pairs) {
        const int inside = static_cast<int>(in_bundle[a]) + static_cast<int>(in_bundle[b]);
        if (inside == 2) ++cert.crs_gprime;
        else if (inside == 1) ++cert.c2_pairs;
        else ++cert.c1_pairs;
    }
    const auto stats = coloring_stats(g, coloring, crossings);
    cert.mono = stats.mono;
    cert.crossings = stats.total;
    cert.achieved_ratio = stats.ratio;
    cert.c_prime = c_prime_from(cert.k, cert.c2, cert.c3);
    cert.bound = bound_from_certificate(cert);
    cert.c = Rational(1, cert.k) - cert.bound;
    cert.bound_holds = cert.conditions_passed && cert.achieved_ratio <= cert.bound;
    return cert;
}

EndToEndResult end_to_end(const GeometricGraph& g, std::uint32_t k, const BuildParams& params) {
    const auto crossings = crossing_set(g);
    if (crossings.count == 0) throw PipelineError("input", "vacuous instance: the graph has no crossing pairs");
    EndToEndResult result;
    result.build = build_bundles(g, k, params);
    const auto& bundles = result.build.bundles;
    Constants constants;
    try {
        constants = certificate_constants(g, bundles);
    } catch (const CertificateError& e) {
        throw PipelineError("certificate", e.what());
    }
    result.conditions = verify_conditions(g, bundles, constants);
    if (!result.conditions.passed()) throw PipelineError("certificate", "conditions (a)-(d) do not hold");
    result.coloring = bundle_coloring(g, bundles, {}, crossings);
    result.stats = coloring_stats(g, result.coloring, crossings);
    result.certificate = make_certificate(g, bundles, result.coloring, crossings);
    if (result.stats.ratio > Rational(1, k)) {
        throw std::logic_error("bundle coloring exceeded crs(G)/k; the greedy tail guarantee was violated");
    }
    return result;
}

} // namespace kcross
