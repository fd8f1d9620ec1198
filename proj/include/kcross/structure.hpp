#pragma once

#include "kcross/bundle.hpp"
#include "kcross/graph.hpp"
#include "kcross/regularity.hpp"
#include "kcross/same_type.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace kcross {

/// A pipeline failure tagged with the stage that gave up.
class PipelineError : public std::runtime_error {
public:
    PipelineError(std::string stage, const std::string& what)
        : std::runtime_error(stage + ": " + what), stage_(std::move(stage)) {}

    const std::string& stage() const noexcept { return stage_; }

private:
    std::string stage_;
};

/// Number of K_{2,2} copies between Y and Z: pairs {y1,y2}, {z1,z2} with all four
/// edges present. Throws std::invalid_argument if Y and Z overlap.
std::uint64_t count_K22(const GeometricGraph& g, std::span<const VertexId> y, std::span<const VertexId> z);

/// Lower bound on the non-crossing vertex-disjoint edge pairs inside a bundle: in
/// every geometric K_{2,2} at most one of its two disjoint edge pairs crosses.
std::uint64_t noncrossing_pair_floor(const GeometricGraph& g, const Bundle& bundle);

/// Vertex-disjoint pairs of bundle edges that do not cross.
std::uint64_t noncrossing_disjoint_pairs(const GeometricGraph& g, const Bundle& bundle);

/// k edges that pairwise cross, by exhaustive branch and bound over the
/// edge-crossing graph (first found in ascending edge order). nullopt means no
/// such family exists. Throws std::invalid_argument if k < 2.
std::optional<std::vector<EdgeIndex>> find_pairwise_crossing_edges(const GeometricGraph& g, std::size_t k);

struct BuildParams {
    /// Values of r to try in order; empty means {2k, 4k, 8k}.
    std::vector<std::size_t> r_schedule;
    /// Regularity parameter; defaults to min{1/8, d/(4-d) - d/4} rounded down to a power of two.
    std::optional<Rational> epsilon;
    std::uint64_t seed = 1;
    /// Random partitions tried per r (seeds seed, seed+1, ...).
    std::size_t seed_attempts = 4;
    /// Dense regular boxes tried per partition.
    std::size_t box_attempts = 32;
    BoxPartitionOptions partition;
    RefineOptions refine;
    /// Shrink bundles until condition (d) leaves a positive gap.
    bool balance = true;
};

struct BuildResult {
    std::vector<Bundle> bundles;
    std::size_t r = 0;
    std::uint64_t seed = 0;
    Rational epsilon;
    Rational box_density;
    Rational beta;             // same-type retention of the chosen box
    std::size_t trims = 0;     // vertices removed while balancing
    std::size_t attempts = 0;  // candidate boxes examined overall
};

/// min{1/8, d/(4-d) - d/4} rounded down to a power of two. Requires 0 < d <= 1.
Rational default_epsilon(const Rational& d);

/// Finds k bundles satisfying conditions (a)-(d) with the largest constants the
/// instance supports: random balanced partition, witness-driven box partition,
/// dense regular box, same-type refinement, k pairwise crossing edges in the
/// transversal graph (i ~ j when d(W_i, W_j) >= d/(4-d) and the refined pair keeps
/// an edge), then bundles (W_i', W_j'). Throws PipelineError naming the last stage
/// that failed.
BuildResult build_bundles(const GeometricGraph& g, std::size_t k, const BuildParams& params = {});

/// Removes bundle vertices one at a time (greedy on the resulting gap) until
/// 2 * max_i s_i < (min_i |E(Y_i,Z_i)|)^2. Returns the number of removals.
std::size_t balance_bundles(const GeometricGraph& g, std::vector<Bundle>& bundles);

} // namespace kcross
