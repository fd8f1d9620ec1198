#include "kcross/structure.hpp"

#include "kcross/certificate.hpp"

#include <algorithm>
#include <bit>
#include <sstream>

namespace kcross {

std::uint64_t count_K22(const GeometricGraph& g, std::span<const VertexId> y, std::span<const VertexId> z) {
    bipartite_edges(g, y, z);  // rejects overlap
    std::uint64_t copies = 0;
    for (std::size_t a = 0; a < z.size(); ++a) {
        for (std::size_t b = a + 1; b < z.size(); ++b) {
            std::uint64_t common = 0;
            for (auto v : y) {
                if (g.has_edge(v, z[a]) && g.has_edge(v, z[b])) ++common;
            }
            copies += common * (common - (common > 0 ? 1 : 0)) / 2;
        }
    }
    return copies;
}

std::uint64_t noncrossing_pair_floor(const GeometricGraph& g, const Bundle& bundle) {
    return count_K22(g, bundle.y, bundle.z);
}

std::uint64_t noncrossing_disjoint_pairs(const GeometricGraph& g, const Bundle& bundle) {
    std::uint64_t count = 0;
    const auto& edges = bundle.edges;
    for (std::size_t i = 0; i < edges.size(); ++i) {
        const auto& e = g.edge(edges[i]);
        for (std::size_t j = i + 1; j < edges.size(); ++j) {
            const auto& f = g.edge(edges[j]);
            if (e.u == f.u || e.u == f.v || e.v == f.u || e.v == f.v) continue;
            if (!g.edges_cross(edges[i], edges[j])) ++count;
        }
    }
    return count;
}

namespace {

class Bitset {
public:
    explicit Bitset(std::size_t size = 0) : words_((size + 63) / 64, 0) {}

    void set(std::size_t i) { words_[i / 64] |= std::uint64_t{1} << (i % 64); }
    bool test(std::size_t i) const { return (words_[i / 64] >> (i % 64)) & 1u; }

    std::size_t count() const {
        std::size_t c = 0;
        for (auto w : words_) c += std::popcount(w);
        return c;
    }

    Bitset operator&(const Bitset& other) const {
        Bitset out;
        out.words_.resize(words_.size());
        for (std::size_t i = 0; i < words_.size(); ++i) out.words_[i] = words_[i] & other.words_[i];
        return out;
    }

    /// Clears every bit at or below i.
    void clear_through(std::size_t i) {
        for (std::size_t w = 0; w < i / 64; ++w) words_[w] = 0;
        const std::size_t bit = i % 64;
        words_[i / 64] &= bit == 63 ? 0 : ~((std::uint64_t{2} << bit) - 1);
    }

    template <class F>
    void for_each(F&& f) const {
        for (std::size_t w = 0; w < words_.size(); ++w) {
            auto word = words_[w];
            while (word) {
                const auto bit = static_cast<std::size_t>(std::countr_zero(word));
                if (!f(w * 64 + bit)) return;
                word &= word - 1;
            }
        }
    }

private:
    std::vector<std::uint64_t> words_;
};

class CrossingCliqueSearch {
public:
    CrossingCliqueSearch(const GeometricGraph& g, std::size_t k) : k_(k), m_(g.edge_count()) {
        cross_.assign(m_, Bitset(m_));
        for (std::size_t a = 0; a < m_; ++a) {
            for (std::size_t b = a + 1; b < m_; ++b) {
                if (g.edges_cross(static_cast<EdgeIndex>(a), static_cast<EdgeIndex>(b))) {
                    cross_[a].set(b);
                    cross_[b].set(a);
                }
            }
        }
    }

    std::optional<std::vector<EdgeIndex>> run() {
        Bitset candidates(m_);
        for (std::size_t e = 0; e < m_; ++e) {
            if (cross_[e].count() + 1 >= k_) candidates.set(e);
        }
        if (extend(candidates)) return chosen_;
        return std::nullopt;
    }

private:
    bool extend(const Bitset& candidates) {
        if (chosen_.size() == k_) return true;
        if (chosen_.size() + candidates.count() < k_) return false;
        bool found = false;
        candidates.for_each([&](std::size_t e) {
            Bitset next = candidates & cross_[e];
            next.clear_through(e);
            chosen_.push_back(static_cast<EdgeIndex>(e));
            if (extend(next)) {
                found = true;
                return false;
            }
            chosen_.pop_back();
            return true;
        });
        return found;
    }

    std::size_t k_;
    std::size_t m_;
    std::vector<Bitset> cross_;
    std::vector<EdgeIndex> chosen_;
};

} // namespace

std::optional<std::vector<EdgeIndex>> find_pairwise_crossing_edges(const GeometricGraph& g, std::size_t k) {
    if (k < 2) throw std::invalid_argument("find_pairwise_crossing_edges: k must be at least 2");
    if (g.edge_count() < k) return std::nullopt;
    return CrossingCliqueSearch(g, k).run();
}

Rational default_epsilon(const Rational& d) {
    if (d <= 0 || d > 1) throw std::invalid_argument("default_epsilon: density must lie in (0, 1]");
    const Rational gap = d / (4 - d) - d / 4;
    return dyadic_floor(std::min(Rational(1, 8), gap));
}

namespace {

struct BundleShape {
    std::uint64_t edges = 0;
    std::uint64_t s = 0;
};

BundleShape shape_of(const GeometricGraph& g, const Bundle& b) {
    return {b.edges.size(), count_crossings_among(g, b.edges)};
}

// 2*max s - (min |E|)^2 < 0 means condition (d) leaves a positive gap; more negative is better.
long double gap_score(const std::vector<BundleShape>& shapes) {
    std::uint64_t min_edges = shapes.front().edges;
    std::uint64_t max_s = 0;
    for (const auto& s : shapes) {
        min_edges = std::min(min_edges, s.edges);
        max_s = std::max(max_s, s.s);
    }
    return static_cast<long double>(min_edges) * static_cast<long double>(min_edges) -
           2.0L * static_cast<long double>(max_s);
}

bool gap_positive(const std::vector<BundleShape>& shapes) {
    std::uint64_t min_edges = shapes.front().edges;
    std::uint64_t max_s = 0;
    for (const auto& s : shapes) {
        min_edges = std::min(min_edges, s.edges);
        max_s = std::max(max_s, s.s);
    }
    return 2 * max_s < min_edges * min_edges;
}

} // namespace

std::size_t balance_bundles(const GeometricGraph& g, std::vector<Bundle>& bundles) {
    if (bundles.empty()) return 0;
    std::vector<BundleShape> shapes;
    for (const auto& b : bundles) shapes.push_back(shape_of(g, b));
    std::size_t removals = 0;
    while (!gap_positive(shapes)) {
        std::size_t target = 0;
        for (std::size_t i = 1; i < shapes.size(); ++i) {
            if (shapes[i].s > shapes[target].s) target = i;
        }
        const auto& b = bundles[target];
        std::optional<Bundle> best;
        BundleShape best_shape;
        long double best_score = 0;
        auto consider = [&](std::vector<VertexId> y, std::vector<VertexId> z) {
            if (y.empty() || z.empty()) return;
            auto candidate = make_bundle(g, std::move(y), std::move(z));
            if (candidate.edges.empty()) return;
            auto trial = shapes;
            trial[target] = shape_of(g, candidate);
            const auto score = gap_score(trial);
            if (!best || score > best_score) {
                best_score = score;
                best_shape = trial[target];
                best = std::move(candidate);
            }
        };
        for (std::size_t i = 0; i < b.y.size(); ++i) {
            auto y = b.y;
            y.erase(y.begin() + static_cast<std::ptrdiff_t>(i));
            consider(std::move(y), b.z);
        }
        for (std::size_t i = 0; i < b.z.size(); ++i) {
            auto z = b.z;
            z.erase(z.begin() + static_cast<std::ptrdiff_t>(i));
            consider(b.y, std::move(z));
        }
        // A bundle with s > 0 has two disjoint edges, so some removal keeps an edge.
        if (!best) break;
        bundles[target] = std::move(*best);
        shapes[target] = best_shape;
        ++removals;
    }
    return removals;
}

namespace {

struct Attempt {
    std::string stage;
    std::string message;
};

// Tries one dense regular box; returns bundles or records why it failed.
std::optional<std::vector<Bundle>> bundles_from_box(const GeometricGraph& g, std::size_t k, const Box& box,
                                                    const Rational& delta, const BuildParams& params,
                                                    BuildResult& info, Attempt& failure) {
    TuplePartition factors = box.factors;
    const auto refined = same_type_refine(g.vertices(), factors, params.refine);
    if (!refined.certified) {
        failure = {"same-type", "refinement hit its iteration cap"};
        return std::nullopt;
    }
    const std::size_t r = factors.size();
    const auto threshold = threshold_graph(g, box, delta);

    // Transversal graph on one representative per refined factor.
    std::vector<Point> transversal;
    for (const auto& part : refined.parts) transversal.push_back(g.point(part.front()));
    std::vector<Edge> edges;
    for (const auto& [i, j] : threshold.edges) {
        if (!bipartite_edges(g, refined.parts[i], refined.parts[j]).empty()) {
            edges.push_back({static_cast<VertexId>(i), static_cast<VertexId>(j)});
        }
    }
    GeometricGraph transversal_graph(PointSet(std::move(transversal)), std::move(edges));
    const auto family = find_pairwise_crossing_edges(transversal_graph, k);
    if (!family) {
        std::ostringstream msg;
        msg << "transversal graph on " << r << " factors with " << transversal_graph.edge_count()
            << " edges has no " << k << " pairwise crossing edges";
        failure = {"crossing-search", msg.str()};
        return std::nullopt;
    }

    std::vector<Bundle> bundles;
    for (auto e : *family) {
        const auto& edge = transversal_graph.edge(e);
        bundles.push_back(make_bundle(g, refined.parts[edge.u], refined.parts[edge.v]));
    }
    std::size_t trims = params.balance ? balance_bundles(g, bundles) : 0;

    try {
        const auto constants = certificate_constants(g, bundles);
        const auto report = verify_conditions(g, bundles, constants);
        if (!report.passed()) {
            std::ostringstream msg;
            msg << "conditions failed:";
            for (const auto& f : report.failures) msg << ' ' << f << ';';
            failure = {"certificate", msg.str()};
            return std::nullopt;
        }
    } catch (const CertificateError& e) {
        failure = {"certificate", e.what()};
        return std::nullopt;
    }
    info.beta = refined.beta;
    info.trims = trims;
    return bundles;
}

} // namespace

BuildResult build_bundles(const GeometricGraph& g, std::size_t k, const BuildParams& params) {
    if (k < 2) throw PipelineError("input", "k must be at least 2");
    if (g.vertex_count() < 2 * k) throw PipelineError("input", "fewer than 2k vertices");
    const Rational d = density(g);
    if (d == 0) throw PipelineError("input", "graph has no edges");
    const Rational eps = params.epsilon ? *params.epsilon : default_epsilon(d);
    const Rational delta = d / (4 - d);

    std::vector<std::size_t> schedule = params.r_schedule;
    if (schedule.empty()) schedule = {2 * k, 4 * k, 8 * k};

    BuildResult info;
    info.epsilon = eps;
    Attempt last{"input", "empty r schedule"};
    for (auto r : schedule) {
        if (r < 2 * k) {
            last = {"partition", "r = " + std::to_string(r) + " is below 2k"};
            continue;
        }
        if (r > g.vertex_count()) {
            last = {"partition", "r = " + std::to_string(r) + " exceeds the vertex count"};
            continue;
        }
        for (std::size_t attempt = 0; attempt < std::max<std::size_t>(1, params.seed_attempts); ++attempt) {
            const std::uint64_t seed = params.seed + attempt;
            const auto partition = random_balanced_partition(g, r, seed);
            auto options = params.partition;
            options.regularity.seed = seed;
            BoxPartition boxes;
            try {
                boxes = regular_box_partition(g, partition.parts, eps, options);
            } catch (const std::invalid_argument& e) {
                last = {"regularity", e.what()};
                continue;
            }
            if (boxes.failed) {
                last = {"regularity", "iteration cap reached before irregular mass fell below eps * m^r"};
                continue;
            }
            const auto candidates = dense_regular_boxes(g, boxes, d, /*accept_unknown=*/true);
            if (candidates.empty()) {
                try {
                    select_dense_regular_box(g, boxes, d, true);
                } catch (const std::runtime_error& e) {
                    last = {"select-box", e.what()};
                }
                continue;
            }
            const std::size_t tries = std::min(candidates.size(), std::max<std::size_t>(1, params.box_attempts));
            for (std::size_t c = 0; c < tries; ++c) {
                ++info.attempts;
                const auto& box = boxes.boxes[candidates[c]];
                if (auto bundles = bundles_from_box(g, k, box, delta, params, info, last)) {
                    info.bundles = std::move(*bundles);
                    info.r = r;
                    info.seed = seed;
                    info.box_density = box_density(g, box);
                    return info;
                }
            }
        }
    }
    throw PipelineError(last.stage, last.message);
}

} // namespace kcross
