#pragma once

#include "kcross/bundle.hpp"
#include "kcross/coloring.hpp"
#include "kcross/graph.hpp"
#include "kcross/structure.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace kcross {

class CertificateError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct Constants {
    Rational c1;
    Rational c2;
    Rational c3;
};

/// Outcome of checking conditions (a)-(d) for given constants, all counted exactly.
struct ConditionReport {
    bool a = false;  // |Y_i|, |Z_i| >= c1 n
    bool b = false;  // |E(Y_i,Z_i)| >= c2 n^2
    bool c = false;  // every Y_i-Z_i edge crosses every Y_j-Z_j edge, i != j
    bool d = false;  // s_i <= (c2^2/2 - c3) n^4
    std::vector<std::uint64_t> edge_counts;
    std::vector<std::uint64_t> s;  // crossing pairs inside each bundle
    std::optional<std::pair<EdgeIndex, EdgeIndex>> c_witness;
    std::vector<std::string> failures;

    bool passed() const noexcept { return a && b && c && d; }
};

/// Throws std::invalid_argument if k < 2 or an edge belongs to two bundles.
ConditionReport verify_conditions(const GeometricGraph& g, std::span<const Bundle> bundles, const Constants& constants);

/// c1 = min_i min(|Y_i|,|Z_i|)/n, c2 = min_i |E_i|/n^2, c3 = c2^2/2 - max_i s_i/n^4.
/// Throws CertificateError when c3 <= 0 or some bundle has no edges.
Constants max_feasible_constants(const GeometricGraph& g, std::span<const Bundle> bundles);

/// max_feasible_constants, except that c3 = c2^2/2 (every s_i = 0) is lowered by
/// 1/(4 n^4) so the strict hypothesis c3 < c2^2/2 holds.
Constants certificate_constants(const GeometricGraph& g, std::span<const Bundle> bundles);

struct Certificate {
    std::uint32_t k = 2;
    std::uint64_t n = 0;
    Rational c1, c2, c3;
    std::vector<std::uint64_t> s;
    std::uint64_t crs_gprime = 0;  // crossing pairs among bundle edges
    std::uint64_t c1_pairs = 0;    // crossing pairs among non-bundle edges
    std::uint64_t c2_pairs = 0;    // crossing pairs with one edge of each kind
    Rational c_prime;
    Rational c;
    Rational bound;                // 1/k - c
    Rational achieved_ratio;
    std::uint64_t mono = 0;
    std::uint64_t crossings = 0;
    bool conditions_passed = false;
    bool bound_holds = false;      // achieved_ratio <= bound
};

/// (c3 - c3/k) / (k c2^2/2 - c3). Throws CertificateError unless 0 < c3 < c2^2/2.
Rational c_prime_from(std::uint32_t k, const Rational& c2, const Rational& c3);

/// Ratio cap on the bundle edges alone: (c2^2/2 - c3) / (k (c2^2/2 - c3/k)) = 1/k - c'.
Rational bundle_ratio_cap(std::uint32_t k, const Rational& c2, const Rational& c3);

/// 1/k - c with c = c' crs(G') / (crs(G') + C1 + C2), recomputed from the stored
/// constants and counts. Throws CertificateError on a violated invariant.
Rational bound_from_certificate(const Certificate& cert);

/// Assembles a certificate for the bundles and a coloring of g.
Certificate make_certificate(const GeometricGraph& g, std::span<const Bundle> bundles, const EdgeColoring& coloring,
                             const CrossingSet& crossings);

struct EndToEndResult {
    BuildResult build;
    EdgeColoring coloring;
    ColoringStats stats;
    Certificate certificate;
    ConditionReport conditions;
};

/// build_bundles -> max_feasible_constants -> verify_conditions -> bundle_coloring
/// -> coloring_stats. Throws PipelineError ("input" for a vacuous instance).
EndToEndResult end_to_end(const GeometricGraph& g, std::uint32_t k, const BuildParams& params = {});

} // namespace kcross
