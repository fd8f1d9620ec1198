#include "kcross/generate.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

namespace kcross {

const char* to_string(GeneratorKind kind) {
    switch (kind) {
    case GeneratorKind::UniformSquare: return "uniform-square";
    case GeneratorKind::ConvexPosition: return "convex-position";
    case GeneratorKind::PerturbedGrid: return "perturbed-grid";
    case GeneratorKind::Clustered: return "clustered";
    }
    return "?";
}

GeneratorKind parse_generator_kind(const std::string& name) {
    for (auto kind : {GeneratorKind::UniformSquare, GeneratorKind::ConvexPosition, GeneratorKind::PerturbedGrid,
                      GeneratorKind::Clustered}) {
        if (name == to_string(kind)) return kind;
    }
    throw std::invalid_argument("unknown generator kind: " + name);
}

namespace {

using Rng = std::mt19937_64;

std::int64_t uniform(Rng& rng, std::int64_t lo, std::int64_t hi) {
    return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng);
}

// Draws points one at a time, redrawing any point that breaks general position.
template <class Draw>
std::vector<Point> incremental(const GeneratorSpec& spec, Rng& rng, Draw&& draw) {
    std::vector<Point> points;
    for (std::size_t i = 0; i < spec.n; ++i) {
        std::size_t tries = 0;
        Point p = draw(i, rng);
        while (breaks_general_position(points, p)) {
            if (++tries >= spec.retry_budget) {
                throw GeneratorError("general position not reached within the retry budget (coordinate range " +
                                     std::to_string(spec.coordinate_range) + " too small?)");
            }
            p = draw(i, rng);
        }
        points.push_back(p);
    }
    return points;
}

bool strictly_convex(const std::vector<Point>& ring) {
    const std::size_t n = ring.size();
    for (std::size_t i = 0; i < n; ++i) {
        if (orientation(ring[i], ring[(i + 1) % n], ring[(i + 2) % n]) != Orientation::Minus) return false;
    }
    return true;
}

std::vector<Point> convex_points(const GeneratorSpec& spec, Rng& rng) {
    const double half = static_cast<double>(spec.coordinate_range) / 2.0;
    const double radius = half - 1.0;
    std::uniform_real_distribution<double> offset(0.0, 2.0 * std::numbers::pi / static_cast<double>(spec.n));
    for (std::size_t attempt = 0; attempt < spec.retry_budget; ++attempt) {
        const double phase = offset(rng);
        std::vector<Point> ring;
        for (std::size_t i = 0; i < spec.n; ++i) {
            const double angle = phase + 2.0 * std::numbers::pi * static_cast<double>(i) / static_cast<double>(spec.n);
            ring.push_back({static_cast<std::int64_t>(std::llround(half + radius * std::cos(angle))),
                            static_cast<std::int64_t>(std::llround(half + radius * std::sin(angle)))});
        }
        if (strictly_convex(ring) && find_collinear_triple(ring).empty()) return ring;
    }
    throw GeneratorError("could not place " + std::to_string(spec.n) + " points in strictly convex position");
}

} // namespace

PointSet generate_points(const GeneratorSpec& spec) {
    if (spec.n < 4) throw std::invalid_argument("generate: n must be at least 4");
    if (spec.coordinate_range < 4 || spec.coordinate_range > coordinate_limit) {
        throw std::invalid_argument("generate: coordinate range out of bounds");
    }
    Rng rng(spec.seed);
    const std::int64_t range = spec.coordinate_range;
    switch (spec.kind) {
    case GeneratorKind::UniformSquare:
        return PointSet(incremental(spec, rng, [&](std::size_t, Rng& g) {
            return Point{uniform(g, 0, range - 1), uniform(g, 0, range - 1)};
        }));
    case GeneratorKind::ConvexPosition:
        return PointSet(convex_points(spec, rng));
    case GeneratorKind::PerturbedGrid: {
        const auto side = static_cast<std::int64_t>(std::ceil(std::sqrt(static_cast<double>(spec.n))));
        const std::int64_t spacing = range / side;
        const std::int64_t jitter = spacing / 4;
        return PointSet(incremental(spec, rng, [&](std::size_t i, Rng& g) {
            const auto row = static_cast<std::int64_t>(i) / side;
            const auto col = static_cast<std::int64_t>(i) % side;
            return Point{col * spacing + spacing / 2 + uniform(g, -jitter, jitter),
                         row * spacing + spacing / 2 + uniform(g, -jitter, jitter)};
        }));
    }
    case GeneratorKind::Clustered: {
        const std::size_t clusters = std::max<std::size_t>(2, spec.n / 8);
        const std::int64_t spread = std::max<std::int64_t>(1, range / 16);
        std::vector<Point> centers;
        for (std::size_t c = 0; c < clusters; ++c) {
            centers.push_back({uniform(rng, range / 8, range - range / 8), uniform(rng, range / 8, range - range / 8)});
        }
        return PointSet(incremental(spec, rng, [&](std::size_t i, Rng& g) {
            const auto& c = centers[i % clusters];
            return Point{c.x + uniform(g, -spread, spread), c.y + uniform(g, -spread, spread)};
        }));
    }
    }
    throw std::invalid_argument("generate: unknown kind");
}

GeometricGraph generate(const GeneratorSpec& spec) {
    if (spec.density <= 0 || spec.density > 1) throw std::invalid_argument("generate: density must lie in (0, 1]");
    auto points = generate_points(spec);
    const std::size_t n = points.size();
    std::vector<Edge> all;
    for (VertexId u = 0; u < n; ++u) {
        for (VertexId v = u + 1; v < n; ++v) all.push_back({u, v});
    }
    const Rational target = spec.density * BigInt(all.size());
    BigInt m = numerator_of(target) / denominator_of(target);
    if (m * denominator_of(target) < numerator_of(target)) m += 1;
    const auto count = m.convert_to<std::size_t>();
    if (count < all.size()) {
        // Separate stream from the point draws so density changes never move points.
        Rng rng(spec.seed ^ 0x9e3779b97f4a7c15ULL);
        std::shuffle(all.begin(), all.end(), rng);
        all.resize(count);
        std::sort(all.begin(), all.end(), [](const Edge& a, const Edge& b) {
            return a.u != b.u ? a.u < b.u : a.v < b.v;
        });
    }
    return GeometricGraph(std::move(points), std::move(all));
}

} // namespace kcross
