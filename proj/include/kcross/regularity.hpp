#pragma once

#include "kcross/graph.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace kcross {

enum class Regularity { Regular, NotRegular, Unknown };

const char* to_string(Regularity r);

/// Verdict for one pair (A, B). Regular is only ever reported after an
/// exhaustive scan; sampling can falsify but never confirm.
struct PairRegularity {
    Regularity verdict = Regularity::Unknown;
    std::vector<VertexId> witness_x;  // subset of A, set when NotRegular
    std::vector<VertexId> witness_y;  // subset of B, set when NotRegular
    Rational witness_gap;             // |d(X,Y) - d(A,B)| for the witness
    bool exhaustive = false;
    std::uint64_t samples = 0;        // subsets tried in sampling mode
};

struct RegularityOptions {
    /// Exhaustive when |A| + |B| <= this cap, randomized falsification otherwise.
    std::size_t exhaustive_cap = 24;
    std::uint64_t sample_budget = 4096;
    std::uint64_t seed = 0;
};

/// (A, B) is eps-regular when every X of A, Y of B with |X| >= eps|A| and
/// |Y| >= eps|B| has |d(X,Y) - d(A,B)| <= eps. For a fixed X the extreme values
/// of e(X, Y) over |Y| = s come from the s highest / lowest degree vertices of B
/// into X, so the exhaustive scan only enumerates subsets of the smaller side.
/// Throws std::invalid_argument if eps is outside (0, 1) or the sets are empty or overlap.
PairRegularity epsilon_regular_pair(const GeometricGraph& g, std::span<const VertexId> a,
                                    std::span<const VertexId> b, const Rational& eps,
                                    const RegularityOptions& options = {});

struct BalancedPartition {
    std::vector<std::vector<VertexId>> parts;
    std::vector<VertexId> removed;  // trimmed minimum-degree vertices, in removal order
};

/// Removes minimum-degree vertices (of the remaining graph, ties by id) until r
/// divides the vertex count, then splits a uniform random permutation into r
/// blocks of n/r. Throws std::invalid_argument if r < 2 or fewer than r vertices remain.
BalancedPartition random_balanced_partition(const GeometricGraph& g, std::size_t r, std::uint64_t seed);

/// Induced edges over C(r, 2). Throws std::invalid_argument on repeated vertices or r < 2.
Rational tuple_density(const GeometricGraph& g, std::span<const VertexId> tuple);

struct Box {
    std::vector<std::vector<VertexId>> factors;
    Regularity regular = Regularity::Unknown;
    /// Pair indices (i, j) and witness sets behind a NotRegular flag.
    std::optional<std::pair<std::size_t, std::size_t>> witness_pair;
    std::vector<VertexId> witness_x;
    std::vector<VertexId> witness_y;

    BigInt tuple_count() const;
};

/// Average tuple density of the box, via C(r,2)^-1 * sum_{i<j} d(W_i, W_j).
/// Throws std::invalid_argument on an empty factor or fewer than two factors.
Rational box_density(const GeometricGraph& g, const Box& box);

/// The graph R(W, delta) on factor indices: i ~ j iff d(W_i, W_j) >= delta.
struct ThresholdGraph {
    std::size_t order = 0;
    std::vector<std::pair<std::size_t, std::size_t>> edges;  // i < j, lexicographic
    std::vector<Rational> pair_densities;                    // row-major over i < j

    bool adjacent(std::size_t i, std::size_t j) const;
    Rational density() const;
};

ThresholdGraph threshold_graph(const GeometricGraph& g, const Box& box, const Rational& delta);

/// Flags a box from its pair verdicts: NotRegular if any pair is, Regular if all are.
void classify_box(const GeometricGraph& g, Box& box, const Rational& eps, const RegularityOptions& options = {});

struct BoxPartition {
    std::vector<Box> boxes;
    Rational epsilon;
    BigInt irregular_mass;  // tuples in NotRegular boxes
    BigInt total_mass;      // m^r
    std::size_t unknown_boxes = 0;
    std::size_t iterations = 0;
    bool failed = false;    // iteration cap hit with irregular_mass > eps * m^r
};

struct BoxPartitionOptions {
    RegularityOptions regularity;
    std::size_t iteration_cap = 20000;
};

/// Witness-driven refinement starting from the single box V_1 x ... x V_r: while
/// the NotRegular mass exceeds eps * m^r, the heaviest NotRegular box is split
/// along its witness sets (X, W_i \ X) x (Y, W_j \ Y). Throws std::invalid_argument
/// if the parts are not disjoint and equally sized, or eps is outside (0, 1).
BoxPartition regular_box_partition(const GeometricGraph& g, std::span<const std::vector<VertexId>> parts,
                                   const Rational& eps, const BoxPartitionOptions& options = {});

/// Boxes flagged Regular (plus Unknown ones when accept_unknown) whose density is
/// at least d/2, densest first (ties: heavier box, then partition order).
std::vector<std::size_t> dense_regular_boxes(const GeometricGraph& g, const BoxPartition& partition,
                                             const Rational& d, bool accept_unknown = false);

/// The first of dense_regular_boxes. Throws std::runtime_error describing the best
/// box found when nothing qualifies.
Box select_dense_regular_box(const GeometricGraph& g, const BoxPartition& partition, const Rational& d,
                             bool accept_unknown = false);

} // namespace kcross
