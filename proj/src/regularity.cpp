#include "kcross/regularity.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <random>
#include <sstream>
#include <stdexcept>

namespace kcross {

const char* to_string(Regularity r) {
    switch (r) {
    case Regularity::Regular: return "regular";
    case Regularity::NotRegular: return "not-regular";
    case Regularity::Unknown: return "unknown";
    }
    return "?";
}

namespace {

void require_epsilon(const Rational& eps) {
    if (eps <= 0 || eps >= 1) throw std::invalid_argument("epsilon must lie in (0, 1)");
}

// ceil(eps * size) as an integer, at least 1.
std::size_t min_subset_size(const Rational& eps, std::size_t size) {
    const BigInt num = numerator_of(eps) * size;
    const BigInt den = denominator_of(eps);
    BigInt c = num / den;
    if (c * den < num) c += 1;
    return std::max<std::size_t>(1, c.convert_to<std::size_t>());
}

// Shared state for scanning subsets X of the smaller side S against the larger side T.
class PairScanner {
public:
    PairScanner(const GeometricGraph& g, std::span<const VertexId> s, std::span<const VertexId> t,
                const Rational& eps)
        : g_(g), s_(s), t_(t) {
        for (auto u : s_) {
            for (auto v : t_) {
                if (g_.has_edge(u, v)) ++edges_;
            }
        }
        eps_num_ = numerator_of(eps).convert_to<long long>();
        eps_den_ = denominator_of(eps).convert_to<long long>();
        min_t_ = min_subset_size(eps, t_.size());
        min_s_ = min_subset_size(eps, s_.size());
        degree_.resize(t_.size());
        order_.resize(t_.size());
        prefix_.resize(t_.size() + 1);
    }

    std::size_t min_s() const { return min_s_; }

    /// Checks every |Y| for the given X (given through the per-T degrees);
    /// fills the witness and returns true on a violation.
    bool violates(std::size_t x_size, std::vector<VertexId>& witness_y, Rational& gap) {
        std::iota(order_.begin(), order_.end(), std::size_t{0});
        std::stable_sort(order_.begin(), order_.end(),
                         [&](std::size_t a, std::size_t b) { return degree_[a] > degree_[b]; });
        prefix_[0] = 0;
        for (std::size_t i = 0; i < order_.size(); ++i) prefix_[i + 1] = prefix_[i] + degree_[order_[i]];
        const long long total = prefix_.back();
        const __int128 ab = static_cast<__int128>(s_.size()) * t_.size();
        const std::size_t nt = t_.size();
        for (std::size_t size = min_t_; size <= nt; ++size) {
            const long long top = prefix_[size];
            const long long bottom = total - prefix_[nt - size];
            for (int pass = 0; pass < 2; ++pass) {
                const long long e = pass == 0 ? top : bottom;
                const __int128 xs = static_cast<__int128>(x_size) * size;
                __int128 diff = static_cast<__int128>(e) * ab - static_cast<__int128>(edges_) * xs;
                if (diff < 0) diff = -diff;
                if (diff * eps_den_ > static_cast<__int128>(eps_num_) * xs * ab) {
                    witness_y.clear();
                    for (std::size_t i = 0; i < size; ++i) {
                        witness_y.push_back(t_[order_[pass == 0 ? i : nt - 1 - i]]);
                    }
                    std::sort(witness_y.begin(), witness_y.end());
                    gap = Rational(BigInt(static_cast<long long>(diff)),
                                   BigInt(static_cast<long long>(xs)) * static_cast<long long>(ab));
                    return true;
                }
            }
        }
        return false;
    }

    std::vector<long long>& degrees() { return degree_; }

private:
    const GeometricGraph& g_;
    std::span<const VertexId> s_;
    std::span<const VertexId> t_;
    long long edges_ = 0;
    long long eps_num_ = 0;
    long long eps_den_ = 1;
    std::size_t min_s_ = 1;
    std::size_t min_t_ = 1;
    std::vector<long long> degree_;
    std::vector<std::size_t> order_;
    std::vector<long long> prefix_;
};

} // namespace

PairRegularity epsilon_regular_pair(const GeometricGraph& g, std::span<const VertexId> a,
                                    std::span<const VertexId> b, const Rational& eps,
                                    const RegularityOptions& options) {
    require_epsilon(eps);
    if (numerator_of(eps) > BigInt(1) << 40 || denominator_of(eps) > BigInt(1) << 40) {
        throw std::invalid_argument("epsilon numerator/denominator too large");
    }
    pair_density(g, a, b);  // validates emptiness and overlap

    const bool swapped = a.size() > b.size();
    const auto s = swapped ? b : a;
    const auto t = swapped ? a : b;
    PairScanner scanner(g, s, t, eps);
    PairRegularity result;
    std::vector<VertexId> witness_t;
    std::vector<VertexId> witness_s;

    auto record = [&](Rational gap) {
        result.verdict = Regularity::NotRegular;
        result.witness_gap = std::move(gap);
        std::sort(witness_s.begin(), witness_s.end());
        result.witness_x = swapped ? witness_t : witness_s;
        result.witness_y = swapped ? witness_s : witness_t;
    };

    if (a.size() + b.size() <= options.exhaustive_cap && s.size() < 63) {
        result.exhaustive = true;
        std::vector<std::uint64_t> neighbors(t.size(), 0);
        for (std::size_t j = 0; j < t.size(); ++j) {
            for (std::size_t i = 0; i < s.size(); ++i) {
                if (g.has_edge(s[i], t[j])) neighbors[j] |= std::uint64_t{1} << i;
            }
        }
        const std::uint64_t full = (std::uint64_t{1} << s.size()) - 1;
        auto& degree = scanner.degrees();
        for (std::uint64_t mask = 1; mask <= full; ++mask) {
            const auto x_size = static_cast<std::size_t>(std::popcount(mask));
            if (x_size < scanner.min_s()) continue;
            for (std::size_t j = 0; j < t.size(); ++j) degree[j] = std::popcount(neighbors[j] & mask);
            Rational gap;
            if (scanner.violates(x_size, witness_t, gap)) {
                witness_s.clear();
                for (std::size_t i = 0; i < s.size(); ++i) {
                    if (mask & (std::uint64_t{1} << i)) witness_s.push_back(s[i]);
                }
                record(std::move(gap));
                return result;
            }
        }
        result.verdict = Regularity::Regular;
        return result;
    }

    std::mt19937_64 rng(options.seed);
    std::vector<VertexId> pool(s.begin(), s.end());
    std::uniform_int_distribution<std::size_t> size_pick(scanner.min_s(), s.size());
    auto& degree = scanner.degrees();
    for (std::uint64_t sample = 0; sample < options.sample_budget; ++sample) {
        ++result.samples;
        std::shuffle(pool.begin(), pool.end(), rng);
        const std::size_t x_size = size_pick(rng);
        for (std::size_t j = 0; j < t.size(); ++j) {
            long long d = 0;
            for (std::size_t i = 0; i < x_size; ++i) d += g.has_edge(pool[i], t[j]) ? 1 : 0;
            degree[j] = d;
        }
        Rational gap;
        if (scanner.violates(x_size, witness_t, gap)) {
            witness_s.assign(pool.begin(), pool.begin() + static_cast<std::ptrdiff_t>(x_size));
            record(std::move(gap));
            return result;
        }
    }
    result.verdict = Regularity::Unknown;
    return result;
}

BalancedPartition random_balanced_partition(const GeometricGraph& g, std::size_t r, std::uint64_t seed) {
    if (r < 2) throw std::invalid_argument("random_balanced_partition: r must be at least 2");
    const std::size_t n = g.vertex_count();
    std::vector<bool> alive(n, true);
    std::vector<std::size_t> degree(n);
    for (std::size_t v = 0; v < n; ++v) degree[v] = g.degree(static_cast<VertexId>(v));
    BalancedPartition result;
    std::size_t remaining = n;
    while (remaining % r != 0 && remaining > 0) {
        std::size_t victim = n;
        for (std::size_t v = 0; v < n; ++v) {
            if (alive[v] && (victim == n || degree[v] < degree[victim])) victim = v;
        }
        alive[victim] = false;
        --remaining;
        result.removed.push_back(static_cast<VertexId>(victim));
        for (std::size_t v = 0; v < n; ++v) {
            if (alive[v] && g.has_edge(static_cast<VertexId>(v), static_cast<VertexId>(victim))) --degree[v];
        }
    }
    if (remaining < r) {
        std::ostringstream msg;
        msg << "random_balanced_partition: " << n << " vertices cannot fill " << r << " parts";
        throw std::invalid_argument(msg.str());
    }
    std::vector<VertexId> ids;
    for (std::size_t v = 0; v < n; ++v) {
        if (alive[v]) ids.push_back(static_cast<VertexId>(v));
    }
    std::mt19937_64 rng(seed);
    std::shuffle(ids.begin(), ids.end(), rng);
    const std::size_t m = ids.size() / r;
    for (std::size_t i = 0; i < r; ++i) {
        std::vector<VertexId> part(ids.begin() + static_cast<std::ptrdiff_t>(i * m),
                                   ids.begin() + static_cast<std::ptrdiff_t>((i + 1) * m));
        std::sort(part.begin(), part.end());
        result.parts.push_back(std::move(part));
    }
    return result;
}

Rational tuple_density(const GeometricGraph& g, std::span<const VertexId> tuple) {
    if (tuple.size() < 2) throw std::invalid_argument("tuple_density: need at least two vertices");
    std::vector<VertexId> sorted(tuple.begin(), tuple.end());
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
        throw std::invalid_argument("tuple_density: repeated vertex");
    }
    return Rational(BigInt(induced_edge_count(g, tuple)), choose2(tuple.size()));
}

BigInt Box::tuple_count() const {
    BigInt count = 1;
    for (const auto& f : factors) count *= f.size();
    return count;
}

Rational box_density(const GeometricGraph& g, const Box& box) {
    const std::size_t r = box.factors.size();
    if (r < 2) throw std::invalid_argument("box_density: need at least two factors");
    Rational sum = 0;
    for (std::size_t i = 0; i < r; ++i) {
        for (std::size_t j = i + 1; j < r; ++j) sum += pair_density(g, box.factors[i], box.factors[j]).value;
    }
    return sum / choose2(r);
}

bool ThresholdGraph::adjacent(std::size_t i, std::size_t j) const {
    if (i > j) std::swap(i, j);
    return std::binary_search(edges.begin(), edges.end(), std::make_pair(i, j));
}

Rational ThresholdGraph::density() const {
    if (order < 2) return 0;
    return Rational(BigInt(edges.size()), choose2(order));
}

ThresholdGraph threshold_graph(const GeometricGraph& g, const Box& box, const Rational& delta) {
    ThresholdGraph r;
    r.order = box.factors.size();
    for (std::size_t i = 0; i < r.order; ++i) {
        for (std::size_t j = i + 1; j < r.order; ++j) {
            auto d = pair_density(g, box.factors[i], box.factors[j]).value;
            if (d >= delta) r.edges.emplace_back(i, j);
            r.pair_densities.push_back(std::move(d));
        }
    }
    return r;
}

void classify_box(const GeometricGraph& g, Box& box, const Rational& eps, const RegularityOptions& options) {
    box.regular = Regularity::Regular;
    box.witness_pair.reset();
    box.witness_x.clear();
    box.witness_y.clear();
    const std::size_t r = box.factors.size();
    for (std::size_t i = 0; i < r; ++i) {
        for (std::size_t j = i + 1; j < r; ++j) {
            auto verdict = epsilon_regular_pair(g, box.factors[i], box.factors[j], eps, options);
            if (verdict.verdict == Regularity::NotRegular) {
                box.regular = Regularity::NotRegular;
                box.witness_pair = std::make_pair(i, j);
                box.witness_x = std::move(verdict.witness_x);
                box.witness_y = std::move(verdict.witness_y);
                return;
            }
            if (verdict.verdict == Regularity::Unknown) box.regular = Regularity::Unknown;
        }
    }
}

namespace {

std::vector<std::vector<VertexId>> split_factor(const std::vector<VertexId>& factor, const std::vector<VertexId>& part) {
    std::vector<VertexId> rest;
    std::set_difference(factor.begin(), factor.end(), part.begin(), part.end(), std::back_inserter(rest));
    std::vector<std::vector<VertexId>> pieces;
    if (!part.empty()) pieces.push_back(part);
    if (!rest.empty()) pieces.push_back(std::move(rest));
    return pieces;
}

} // namespace

BoxPartition regular_box_partition(const GeometricGraph& g, std::span<const std::vector<VertexId>> parts,
                                   const Rational& eps, const BoxPartitionOptions& options) {
    require_epsilon(eps);
    if (parts.size() < 2) throw std::invalid_argument("regular_box_partition: need at least two parts");
    const std::size_t m = parts[0].size();
    std::vector<bool> used(g.vertex_count(), false);
    Box root;
    for (const auto& part : parts) {
        if (part.size() != m || m == 0) throw std::invalid_argument("regular_box_partition: parts must share one nonzero size");
        for (auto v : part) {
            if (v >= g.vertex_count() || used[v]) throw std::invalid_argument("regular_box_partition: parts overlap");
            used[v] = true;
        }
        auto sorted = part;
        std::sort(sorted.begin(), sorted.end());
        root.factors.push_back(std::move(sorted));
    }

    BoxPartition result;
    result.epsilon = eps;
    result.total_mass = root.tuple_count();
    auto regularity = options.regularity;
    classify_box(g, root, eps, regularity);
    result.boxes.push_back(std::move(root));

    const BigInt eps_num = numerator_of(eps);
    const BigInt eps_den = denominator_of(eps);
    auto irregular = [&] {
        BigInt mass = 0;
        for (const auto& b : result.boxes) {
            if (b.regular == Regularity::NotRegular) mass += b.tuple_count();
        }
        return mass;
    };
    result.irregular_mass = irregular();
    while (result.irregular_mass * eps_den > eps_num * result.total_mass) {
        if (result.iterations >= options.iteration_cap) {
            result.failed = true;
            break;
        }
        ++result.iterations;
        std::size_t pick = result.boxes.size();
        BigInt heaviest = -1;
        for (std::size_t i = 0; i < result.boxes.size(); ++i) {
            if (result.boxes[i].regular != Regularity::NotRegular) continue;
            auto mass = result.boxes[i].tuple_count();
            if (mass > heaviest) {
                heaviest = mass;
                pick = i;
            }
        }
        Box parent = std::move(result.boxes[pick]);
        result.boxes.erase(result.boxes.begin() + static_cast<std::ptrdiff_t>(pick));
        const auto [wi, wj] = *parent.witness_pair;
        const auto pieces_i = split_factor(parent.factors[wi], parent.witness_x);
        const auto pieces_j = split_factor(parent.factors[wj], parent.witness_y);
        std::vector<Box> children;
        for (const auto& pi : pieces_i) {
            for (const auto& pj : pieces_j) {
                Box child;
                child.factors = parent.factors;
                child.factors[wi] = pi;
                child.factors[wj] = pj;
                regularity.seed = options.regularity.seed + result.iterations;
                classify_box(g, child, eps, regularity);
                children.push_back(std::move(child));
            }
        }
        result.boxes.insert(result.boxes.begin() + static_cast<std::ptrdiff_t>(pick),
                            std::make_move_iterator(children.begin()), std::make_move_iterator(children.end()));
        result.irregular_mass = irregular();
    }
    for (const auto& b : result.boxes) {
        if (b.regular == Regularity::Unknown) ++result.unknown_boxes;
    }
    return result;
}

std::vector<std::size_t> dense_regular_boxes(const GeometricGraph& g, const BoxPartition& partition,
                                             const Rational& d, bool accept_unknown) {
    struct Candidate {
        std::size_t index;
        Rational density;
        BigInt mass;
    };
    std::vector<Candidate> candidates;
    const Rational floor = d / 2;
    for (std::size_t i = 0; i < partition.boxes.size(); ++i) {
        const auto& box = partition.boxes[i];
        const bool usable = box.regular == Regularity::Regular || (accept_unknown && box.regular == Regularity::Unknown);
        if (!usable) continue;
        auto density = box_density(g, box);
        if (density >= floor) candidates.push_back({i, std::move(density), box.tuple_count()});
    }
    std::stable_sort(candidates.begin(), candidates.end(), [](const Candidate& a, const Candidate& b) {
        if (a.density != b.density) return a.density > b.density;
        return a.mass > b.mass;
    });
    std::vector<std::size_t> out;
    for (const auto& c : candidates) out.push_back(c.index);
    return out;
}

Box select_dense_regular_box(const GeometricGraph& g, const BoxPartition& partition, const Rational& d,
                             bool accept_unknown) {
    auto candidates = dense_regular_boxes(g, partition, d, accept_unknown);
    if (!candidates.empty()) return partition.boxes[candidates.front()];

    std::ostringstream msg;
    msg << "no regular box reaches density " << to_fraction_string(d / 2);
    std::size_t best = partition.boxes.size();
    Rational best_density = -1;
    for (std::size_t i = 0; i < partition.boxes.size(); ++i) {
        auto density = box_density(g, partition.boxes[i]);
        if (density > best_density) {
            best_density = density;
            best = i;
        }
    }
    if (best < partition.boxes.size()) {
        msg << "; densest box #" << best << " has density " << to_fraction_string(best_density) << " and is "
            << to_string(partition.boxes[best].regular);
    }
    throw std::runtime_error(msg.str());
}

} // namespace kcross
