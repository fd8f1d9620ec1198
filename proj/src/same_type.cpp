#include "kcross/same_type.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <stdexcept>

namespace kcross {

namespace {

void validate(const PointSet& points, const TuplePartition& parts) {
    std::vector<bool> used(points.size(), false);
    for (const auto& part : parts) {
        for (auto v : part) {
            if (v >= points.size()) throw std::invalid_argument("same-type: vertex id out of range");
            if (used[v]) throw std::invalid_argument("same-type: parts are not disjoint");
            used[v] = true;
        }
    }
}

std::optional<SameTypeWitness> triple_violation(const PointSet& points, const TuplePartition& parts, std::size_t i,
                                                std::size_t j, std::size_t k) {
    const auto& xi = parts[i];
    const auto& xj = parts[j];
    const auto& xk = parts[k];
    if (xi.empty() || xj.empty() || xk.empty()) return std::nullopt;
    const auto reference = points.orientation(xi[0], xj[0], xk[0]);
    for (auto a : xi) {
        for (auto b : xj) {
            for (auto c : xk) {
                const auto s = points.orientation(a, b, c);
                if (s != reference) {
                    return SameTypeWitness{{i, j, k}, {xi[0], xj[0], xk[0]}, {a, b, c}, reference, s};
                }
            }
        }
    }
    return std::nullopt;
}

SameTypeCheck check_unvalidated(const PointSet& points, const TuplePartition& parts) {
    const std::size_t t = parts.size();
    for (std::size_t i = 0; i < t; ++i) {
        for (std::size_t j = i + 1; j < t; ++j) {
            for (std::size_t k = j + 1; k < t; ++k) {
                if (auto w = triple_violation(points, parts, i, j, k)) return {false, w};
            }
        }
    }
    return {true, std::nullopt};
}

Rational retained_fraction(const TuplePartition& original, const TuplePartition& refined) {
    Rational beta = 1;
    for (std::size_t i = 0; i < original.size(); ++i) {
        beta = std::min(beta, Rational(BigInt(refined[i].size()), BigInt(original[i].size())));
    }
    return beta;
}

// Cuts one part involved in the violating triple; returns false if no cut exists
// (cannot happen for a genuine violation in general position).
bool cut_once(const PointSet& points, TuplePartition& parts, const std::array<std::size_t, 3>& triple) {
    std::array<std::size_t, 3> roles = triple;
    std::stable_sort(roles.begin(), roles.end(),
                     [&](std::size_t a, std::size_t b) { return parts[a].size() > parts[b].size(); });
    for (auto p : roles) {
        std::array<std::size_t, 2> fixed{};
        std::size_t f = 0;
        for (auto q : triple) {
            if (q != p) fixed[f++] = q;
        }
        std::size_t best_kept = 0;
        VertexId best_a = 0, best_b = 0;
        Orientation best_side = Orientation::Zero;
        for (auto a : parts[fixed[0]]) {
            for (auto b : parts[fixed[1]]) {
                std::size_t plus = 0, minus = 0;
                for (auto c : parts[p]) {
                    (points.orientation(a, b, c) == Orientation::Plus ? plus : minus) += 1;
                }
                if (plus == 0 || minus == 0) continue;
                const std::size_t kept = std::max(plus, minus);
                if (kept > best_kept) {
                    best_kept = kept;
                    best_a = a;
                    best_b = b;
                    best_side = plus >= minus ? Orientation::Plus : Orientation::Minus;
                }
            }
        }
        if (best_kept == 0) continue;
        auto& part = parts[p];
        std::erase_if(part, [&](VertexId c) { return points.orientation(best_a, best_b, c) != best_side; });
        return true;
    }
    return false;
}

class ExhaustiveSearch {
public:
    ExhaustiveSearch(const PointSet& points, const TuplePartition& parts, Rational floor, std::size_t floor_total,
                     std::uint64_t budget)
        : points_(points), parts_(parts), best_beta_(std::move(floor)), best_total_(floor_total), budget_(budget),
          chosen_(parts.size()) {
        for (const auto& part : parts_) {
            std::vector<std::uint32_t> masks;
            const std::uint32_t full = (1u << part.size()) - 1;
            for (std::uint32_t m = 1; m <= full; ++m) masks.push_back(m);
            std::stable_sort(masks.begin(), masks.end(), [](std::uint32_t a, std::uint32_t b) {
                return std::popcount(a) > std::popcount(b);
            });
            masks_.push_back(std::move(masks));
        }
        suffix_.assign(parts_.size() + 1, 0);
        for (std::size_t i = parts_.size(); i-- > 0;) suffix_[i] = suffix_[i + 1] + parts_[i].size();
    }

    /// False if the node budget ran out before the search space was exhausted.
    bool run() {
        descend(0, Rational(1), 0);
        return !exhausted_budget_;
    }

    bool improved() const { return !best_.empty(); }
    const TuplePartition& best() const { return best_; }

private:
    void descend(std::size_t i, const Rational& beta, std::size_t total) {
        if (exhausted_budget_) return;
        if (++nodes_ > budget_) {
            exhausted_budget_ = true;
            return;
        }
        if (i == parts_.size()) {
            if (beta > best_beta_ || (beta == best_beta_ && total > best_total_)) {
                best_beta_ = beta;
                best_total_ = total;
                best_ = chosen_;
            }
            return;
        }
        for (auto mask : masks_[i]) {
            const std::size_t size = std::popcount(mask);
            const Rational next_beta = std::min(beta, Rational(BigInt(size), BigInt(parts_[i].size())));
            if (next_beta < best_beta_) break;  // masks are sorted by size, later ones are no better
            if (next_beta == best_beta_ && total + size + suffix_[i + 1] <= best_total_) continue;
            chosen_[i].clear();
            for (std::size_t b = 0; b < parts_[i].size(); ++b) {
                if (mask & (1u << b)) chosen_[i].push_back(parts_[i][b]);
            }
            if (!consistent_with_prefix(i)) continue;
            descend(i + 1, next_beta, total + size);
            if (exhausted_budget_) return;
        }
        chosen_[i].clear();
    }

    bool consistent_with_prefix(std::size_t i) const {
        for (std::size_t a = 0; a < i; ++a) {
            for (std::size_t b = a + 1; b < i; ++b) {
                if (triple_violation(points_, chosen_, a, b, i)) return false;
            }
        }
        return true;
    }

    const PointSet& points_;
    const TuplePartition& parts_;
    Rational best_beta_;
    std::size_t best_total_;
    std::uint64_t budget_;
    std::uint64_t nodes_ = 0;
    bool exhausted_budget_ = false;
    std::vector<std::vector<std::uint32_t>> masks_;
    std::vector<std::size_t> suffix_;
    TuplePartition chosen_;
    TuplePartition best_;
};

} // namespace

SameTypeCheck same_type_check(const PointSet& points, const TuplePartition& parts) {
    validate(points, parts);
    return check_unvalidated(points, parts);
}

RefineResult same_type_refine(const PointSet& points, const TuplePartition& parts, const RefineOptions& options) {
    validate(points, parts);
    for (const auto& part : parts) {
        if (part.empty()) throw std::invalid_argument("same_type_refine: empty part");
    }
    RefineResult result;
    result.parts = parts;
    auto check = check_unvalidated(points, result.parts);
    while (!check.same_type && result.cuts < options.iteration_cap) {
        if (!cut_once(points, result.parts, check.witness->parts)) break;
        ++result.cuts;
        check = check_unvalidated(points, result.parts);
    }
    result.certified = check.same_type;
    result.beta = retained_fraction(parts, result.parts);

    const bool small = std::all_of(parts.begin(), parts.end(),
                                   [&](const auto& p) { return p.size() <= options.exhaustive_part_limit; });
    if (result.cuts > 0 && small && options.exhaustive_part_limit < 32) {
        std::size_t total = 0;
        for (const auto& p : result.parts) total += p.size();
        // Start from the heuristic answer as the bound to beat (only if it is certified).
        ExhaustiveSearch search(points, parts, result.certified ? result.beta : Rational(0),
                                result.certified ? total : 0, options.exhaustive_node_budget);
        search.run();
        if (search.improved()) {
            result.parts = search.best();
            result.beta = retained_fraction(parts, result.parts);
            result.exhaustive = true;
            result.certified = check_unvalidated(points, result.parts).same_type;
        }
    }
    return result;
}

} // namespace kcross
