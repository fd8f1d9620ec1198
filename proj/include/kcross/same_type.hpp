#pragma once

#include "kcross/geometry.hpp"
#include "kcross/rational.hpp"

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

namespace kcross {

/// Disjoint vertex-id sets X_1..X_t over one point set.
using TuplePartition = std::vector<std::vector<VertexId>>;

/// Two transversal triples of the same three parts whose orientations disagree.
struct SameTypeWitness {
    std::array<std::size_t, 3> parts{};
    std::array<VertexId, 3> first{};
    std::array<VertexId, 3> second{};
    Orientation first_sign = Orientation::Zero;
    Orientation second_sign = Orientation::Zero;
};

struct SameTypeCheck {
    bool same_type = true;
    std::optional<SameTypeWitness> witness;

    explicit operator bool() const noexcept { return same_type; }
};

/// Every triple of parts has one orientation over all point choices. Vacuously
/// true for fewer than three parts. Throws std::invalid_argument when parts
/// overlap or reference missing points.
SameTypeCheck same_type_check(const PointSet& points, const TuplePartition& parts);

struct RefineOptions {
    std::size_t iteration_cap = 100000;
    /// Try an exact subset search once every part has at most this many points.
    std::size_t exhaustive_part_limit = 5;
    std::uint64_t exhaustive_node_budget = 2'000'000;
};

struct RefineResult {
    TuplePartition parts;
    Rational beta;            // min_i |X_i'| / |X_i|
    bool certified = false;   // same_type_check passed on the output
    std::size_t cuts = 0;
    bool exhaustive = false;  // output came from the exact subset search
};

/// Shrinks each part to a nonempty subset with same-type transversals: repeatedly
/// finds a sign-flipping triple and cuts the largest part that a line through two
/// points of the other two parts separates, keeping the majority side. The output
/// is re-checked; `certified` is false only if the iteration cap was reached.
/// Throws std::invalid_argument for an empty part.
RefineResult same_type_refine(const PointSet& points, const TuplePartition& parts, const RefineOptions& options = {});

} // namespace kcross
