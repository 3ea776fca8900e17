#ifndef PRESBIAS_OPTIMIZE_HPP
#define PRESBIAS_OPTIMIZE_HPP

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "presbias/agent.hpp"
#include "presbias/error.hpp"
#include "presbias/rational.hpp"
#include "presbias/rewards.hpp"
#include "presbias/task_graph.hpp"

namespace presbias {

inline constexpr std::size_t kDefaultEdgeCap = 22;
inline constexpr std::uint64_t kDefaultSearchCap = 10'000'000;

/// A subgraph (edge subset of the input) together with a reward at the target
/// that makes it motivating.
struct SubgraphSolution {
    Extended reward;
    std::vector<EdgeId> edges;  // ids in the input graph, ascending
    TaskGraph subgraph;
};

/// A reward configuration and the most the agent can collect under it.
struct ConfigSolution {
    Rational budget;
    RewardConfig config;
};

namespace detail {

inline SubgraphSolution make_solution(const TaskGraph& g, std::vector<EdgeId> edges, Extended reward) {
    std::sort(edges.begin(), edges.end());
    auto sub = g.with_edges(edges);
    return {std::move(reward), std::move(edges), std::move(sub)};
}

inline void require_positive_beta(const BiasFactor& beta) {
    if (beta.value() == 0) throw Error(ErrorCode::ZeroBeta, "beta must be positive");
}

// Reward needed to carry the agent along a single path: the largest
// perceived cost on it, divided by beta.
inline SubgraphSolution path_solution(const TaskGraph& g, const BiasFactor& beta, const Path& path) {
    auto sub = g.with_edges(path.edges);
    auto zeta = perceived_costs(sub, beta);
    Rational worst = 0;
    for (EdgeId e : path.edges) worst = std::max(worst, zeta[g.edge(e).from].value());
    return make_solution(g, path.edges, Extended(Rational(worst / beta.value())));
}

} // namespace detail

/// Polynomial special cases: beta = 0 needs an all-zero s-t path, beta = 1
/// needs d(s) <= reward.
inline std::optional<SubgraphSolution> solve_ms_beta01(const TaskGraph& g, const BiasFactor& beta,
                                                       const Rational& reward) {
    if (beta.value() == 0) {
        std::vector<bool> zero(g.num_edges());
        for (EdgeId e = 0; e < g.num_edges(); ++e) zero[e] = g.edge(e).cost == 0;
        auto path = detail::first_path(g, zero);
        if (!path) return std::nullopt;
        return detail::make_solution(g, path->edges, Extended(reward));
    }
    if (beta.value() == 1) {
        if (cheapest_cost(g, g.source()) > Extended(reward)) return std::nullopt;
        std::vector<EdgeId> all(g.num_edges());
        for (EdgeId e = 0; e < all.size(); ++e) all[e] = e;
        return detail::make_solution(g, all, Extended(reward));
    }
    throw Error(ErrorCode::BetaNotSpecialCase, "beta must be exactly 0 or 1");
}

/// Minmax path alone as subgraph. Reward is within (1 + beta n) of optimal.
inline SubgraphSolution minmax_path_approx(const TaskGraph& g, const BiasFactor& beta) {
    detail::require_positive_beta(beta);
    return detail::path_solution(g, beta, minmax_path(g));
}

/// Cheapest path alone as subgraph. Reward is within 1/beta of optimal.
inline SubgraphSolution cheapest_path_approx(const TaskGraph& g, const BiasFactor& beta) {
    detail::require_positive_beta(beta);
    return detail::path_solution(g, beta, cheapest_path(g));
}

/// True when beta <= 1/sqrt(n), decided exactly as beta^2 n <= 1.
inline bool combined_uses_minmax(std::size_t n, const BiasFactor& beta) {
    return beta.value() * beta.value() * Rational(static_cast<unsigned long>(n)) <= 1;
}

/// approx <= (1 + sqrt(n)) * opt, decided in exact arithmetic by squaring the
/// excess over opt.
inline bool within_one_plus_sqrt(const Rational& approx, const Rational& opt, std::size_t n) {
    if (approx <= opt) return true;
    Rational gap = approx - opt;
    return gap * gap <= Rational(static_cast<unsigned long>(n)) * opt * opt;
}

/// Minmax for small beta, cheapest path otherwise; within (1 + sqrt n).
inline SubgraphSolution combined_approx(const TaskGraph& g, const BiasFactor& beta) {
    if (combined_uses_minmax(g.num_vertices(), beta)) return minmax_path_approx(g, beta);
    return cheapest_path_approx(g, beta);
}

namespace detail {

// Visits the edge subsets of g in Gray-code order, skipping every subset that
// contains an edge lying on no s-t path of that subset. Such edges never
// influence the agent (their tails are never visited, or their heads cannot
// reach the target), so each skipped subset behaves exactly like its trimmed
// core, which has fewer edges and is visited too.
template <class Visit>
void for_each_trimmed_subset(const TaskGraph& g, std::size_t edge_cap, Visit&& visit) {
    const std::size_t m = g.num_edges();
    if (m > edge_cap) {
        throw Error(ErrorCode::TooManyEdges, std::to_string(m) + " edges exceed the cap of " +
                                                 std::to_string(edge_cap));
    }
    if (m >= 63) throw Error(ErrorCode::TooManyEdges, "edge count too large for enumeration");
    auto order = g.topological_order();
    std::vector<char> fwd(g.num_vertices()), bwd(g.num_vertices());
    std::vector<bool> mask(m, false);
    const std::uint64_t total = std::uint64_t{1} << m;
    for (std::uint64_t i = 0; i < total; ++i) {
        const std::uint64_t gray = i ^ (i >> 1);
        auto on = [&](EdgeId e) { return ((gray >> e) & 1U) != 0; };
        std::fill(fwd.begin(), fwd.end(), 0);
        std::fill(bwd.begin(), bwd.end(), 0);
        fwd[g.source()] = 1;
        for (VertexId v : order) {
            if (!fwd[v]) continue;
            for (EdgeId e : g.out_edges(v)) {
                if (on(e)) fwd[g.edge(e).to] = 1;
            }
        }
        bwd[g.target()] = 1;
        for (auto it = order.rbegin(); it != order.rend(); ++it) {
            for (EdgeId e : g.out_edges(*it)) {
                if (on(e) && bwd[g.edge(e).to]) bwd[*it] = 1;
            }
        }
        bool trimmed = true;
        for (EdgeId e = 0; e < m && trimmed; ++e) {
            if (on(e) && !(fwd[g.edge(e).from] && bwd[g.edge(e).to])) trimmed = false;
        }
        if (!trimmed) continue;
        for (EdgeId e = 0; e < m; ++e) mask[e] = on(e);
        if (!visit(mask)) return;
    }
}

inline std::vector<EdgeId> mask_to_edges(const std::vector<bool>& mask) {
    std::vector<EdgeId> edges;
    for (EdgeId e = 0; e < mask.size(); ++e) {
        if (mask[e]) edges.push_back(e);
    }
    return edges;
}

} // namespace detail

/// Brute-force MS-OPT: the least reward at the target for which some edge
/// subset is motivating. Ties go to fewer edges, then the lexicographically
/// smallest edge list.
inline SubgraphSolution exact_min_reward(const TaskGraph& g, const BiasFactor& beta,
                                         std::size_t edge_cap = kDefaultEdgeCap) {
    detail::require_positive_beta(beta);
    std::optional<std::pair<Extended, std::vector<EdgeId>>> best;
    detail::for_each_trimmed_subset(g, edge_cap, [&](const std::vector<bool>& mask) {
        auto sub = g.with_edge_mask(mask);
        Extended reward = min_motivating_reward_fixed_graph(sub, beta);
        auto edges = detail::mask_to_edges(mask);
        bool better = !best || reward < best->first ||
                      (reward == best->first &&
                       (edges.size() < best->second.size() ||
                        (edges.size() == best->second.size() && edges < best->second)));
        if (better) best.emplace(std::move(reward), std::move(edges));
        return true;
    });
    return detail::make_solution(g, best->second, best->first);
}

/// Some subgraph that is motivating for the given reward, or none.
inline std::optional<SubgraphSolution> exact_ms_decision(const TaskGraph& g, const BiasFactor& beta,
                                                         const Rational& reward,
                                                         std::size_t edge_cap = kDefaultEdgeCap) {
    std::optional<SubgraphSolution> found;
    detail::for_each_trimmed_subset(g, edge_cap, [&](const std::vector<bool>& mask) {
        auto sub = g.with_edge_mask(mask);
        if (!is_motivating(sub, beta, reward)) return true;
        found = detail::make_solution(g, detail::mask_to_edges(mask), Extended(reward));
        return false;
    });
    return found;
}

/// Polynomial optimal reward configurations for beta = 0 and beta = 1.
inline std::optional<ConfigSolution> solve_mrc_beta01(const TaskGraph& g, const BiasFactor& beta) {
    if (beta.value() != 0 && beta.value() != 1) {
        throw Error(ErrorCode::BetaNotSpecialCase, "beta must be exactly 0 or 1");
    }
    Extended d_s = cheapest_cost(g, g.source());
    if (d_s.is_infinite()) throw Error(ErrorCode::NoPathToTarget, "target unreachable from source");
    if (beta.value() == 1) {
        RewardConfig cfg;
        cfg.set(g.name(g.target()), d_s.value());
        return ConfigSolution{d_s.value(), cfg};
    }
    std::vector<bool> zero(g.num_edges());
    for (EdgeId e = 0; e < g.num_edges(); ++e) zero[e] = g.edge(e).cost == 0;
    auto zero_reach = detail::reachable_from(g, g.source(), zero);
    // Vertices that reach the target over zero-cost edges.
    std::vector<bool> zero_coreach(g.num_vertices(), false);
    zero_coreach[g.target()] = true;
    auto order = g.topological_order();
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
        for (EdgeId e : g.out_edges(*it)) {
            if (zero[e] && zero_coreach[g.edge(e).to]) zero_coreach[*it] = true;
        }
    }
    for (VertexId v = 0; v < g.num_vertices(); ++v) {
        if (zero_reach[v] && !zero_coreach[v]) return std::nullopt;
    }
    return ConfigSolution{Rational(0), RewardConfig{}};
}

/// Exhaustive search over configurations whose values all come from
/// `candidates`. Returns the configuration with the smallest total placed
/// reward (first in enumeration order on ties) that is motivating within the
/// budget. A none result only rules out the candidate grid.
inline std::optional<ConfigSolution> search_mrc(const TaskGraph& g, const BiasFactor& beta,
                                                const Budget& budget,
                                                const std::vector<Rational>& candidates,
                                                std::uint64_t cap = kDefaultSearchCap) {
    std::set<Rational> unique;
    for (const auto& c : candidates) {
        if (c < 0) throw Error(ErrorCode::InvalidReward, "negative candidate " + to_string(c));
        unique.insert(c);
    }
    if (unique.empty()) unique.insert(Rational(0));
    std::vector<Rational> values(unique.begin(), unique.end());
    const std::size_t n = g.num_vertices();
    std::uint64_t space = 1;
    for (std::size_t i = 0; i < n; ++i) {
        if (space > cap / values.size()) {
            throw Error(ErrorCode::SearchSpaceTooLarge,
                        std::to_string(values.size()) + "^" + std::to_string(n) +
                            " configurations exceed the cap of " + std::to_string(cap));
        }
        space *= values.size();
    }

    std::vector<std::size_t> digit(n, 0);
    std::vector<Rational> r(n, values[0]);
    Rational total = values[0] * Rational(static_cast<unsigned long>(n));
    std::optional<std::pair<Rational, std::vector<Rational>>> best;
    std::optional<Rational> best_collected;
    for (std::uint64_t step = 0; step < space; ++step) {
        if (!best || total < best->first) {
            auto view = detail::reward_view(g, beta, r);
            if (detail::motivating_view(g, view)) {
                Rational collected = detail::collected_bound(g, view, r);
                if (collected <= budget.value()) {
                    best.emplace(total, r);
                    best_collected = collected;
                }
            }
        }
        // Odometer, vertex 0 turning fastest.
        for (std::size_t i = 0; i < n; ++i) {
            total -= values[digit[i]];
            if (++digit[i] < values.size()) {
                r[i] = values[digit[i]];
                total += r[i];
                break;
            }
            digit[i] = 0;
            r[i] = values[0];
            total += r[i];
        }
    }
    if (!best) return std::nullopt;
    RewardConfig cfg;
    for (VertexId v = 0; v < n; ++v) cfg.set(g.name(v), best->second[v]);
    return ConfigSolution{*best_collected, cfg};
}

} // namespace presbias

#endif // PRESBIAS_OPTIMIZE_HPP
