#pragma once

#include "kcross/graph.hpp"

#include <cstdint>
#include <stdexcept>
#include <string>

namespace kcross {

enum class GeneratorKind { UniformSquare, ConvexPosition, PerturbedGrid, Clustered };

const char* to_string(GeneratorKind kind);
GeneratorKind parse_generator_kind(const std::string& name);

struct GeneratorSpec {
    GeneratorKind kind = GeneratorKind::UniformSquare;
    std::size_t n = 20;
    Rational density = 1;
    std::uint64_t seed = 1;
    std::int64_t coordinate_range = std::int64_t{1} << 20;
    std::size_t retry_budget = 1000;  // redraws per point before giving up
};

class GeneratorError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Points in general position for the spec's kind, then ceil(d * C(n,2)) edges
/// drawn uniformly without replacement (the complete graph when d = 1). Throws
/// std::invalid_argument for n < 4 or d outside (0, 1], GeneratorError when
/// general position is not reached within the retry budget.
GeometricGraph generate(const GeneratorSpec& spec);

PointSet generate_points(const GeneratorSpec& spec);

} // namespace kcross
