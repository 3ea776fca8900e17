#ifndef PRESBIAS_AGENT_HPP
#define PRESBIAS_AGENT_HPP

#include <algorithm>
#include <vector>

#include "presbias/error.hpp"
#include "presbias/rational.hpp"
#include "presbias/task_graph.hpp"
#include "presbias/walks.hpp"

namespace presbias {

/// Present-bias factor, 0 <= beta <= 1.
class BiasFactor {
public:
    explicit BiasFactor(Rational beta) : beta_(std::move(beta)) {
        if (beta_ < 0 || beta_ > 1) {
            throw Error(ErrorCode::InvalidBeta, "bias factor must lie in [0,1], got " + to_string(beta_));
        }
    }

    const Rational& value() const { return beta_; }

private:
    Rational beta_;
};

/// Perceived cost of taking edge e now and planning cheapest afterwards.
inline Extended perceived_edge_cost(const TaskGraph& g, const BiasFactor& beta,
                                    const std::vector<Extended>& dist, EdgeId e) {
    const Edge& edge = g.edge(e);
    return edge.cost + scale(beta.value(), dist[edge.to]);
}

/// zeta(v) for every vertex; infinite where there is no outgoing edge.
inline std::vector<Extended> perceived_costs(const TaskGraph& g, const BiasFactor& beta) {
    auto dist = cheapest_costs(g);
    std::vector<Extended> zeta(g.num_vertices(), Extended::infinity());
    for (VertexId v = 0; v < g.num_vertices(); ++v) {
        for (EdgeId e : g.out_edges(v)) {
            zeta[v] = std::min(zeta[v], perceived_edge_cost(g, beta, dist, e));
        }
    }
    return zeta;
}

inline Extended perceived_cost(const TaskGraph& g, const BiasFactor& beta, VertexId v) {
    g.check_vertex(v);
    return perceived_costs(g, beta)[v];
}

namespace detail {

inline std::vector<std::vector<EdgeId>> preferred_table(const TaskGraph& g, const BiasFactor& beta) {
    auto dist = cheapest_costs(g);
    std::vector<std::vector<EdgeId>> table(g.num_vertices());
    for (VertexId v = 0; v < g.num_vertices(); ++v) {
        Extended best = Extended::infinity();
        for (EdgeId e : g.out_edges(v)) {
            Extended c = perceived_edge_cost(g, beta, dist, e);
            if (c.is_infinite()) continue;
            if (c < best) {
                best = c;
                table[v].clear();
            }
            if (c == best) table[v].push_back(e);
        }
    }
    return table;
}

inline DecisionTable single_reward_table(const TaskGraph& g, const BiasFactor& beta,
                                         const Rational& reward) {
    if (reward < 0) throw Error(ErrorCode::InvalidReward, "reward must be non-negative");
    DecisionTable table;
    table.preferred = preferred_table(g, beta);
    auto zeta = perceived_costs(g, beta);
    const Extended threshold(Rational(beta.value() * reward));
    table.abandons.resize(g.num_vertices());
    for (VertexId v = 0; v < g.num_vertices(); ++v) {
        table.abandons[v] = v != g.target() && zeta[v] > threshold;
    }
    return table;
}

} // namespace detail

/// Outgoing edges that realise zeta(v).
inline std::vector<EdgeId> preferred_edges(const TaskGraph& g, const BiasFactor& beta, VertexId v) {
    if (g.out_edges(v).empty()) {
        throw Error(ErrorCode::NoOutgoingEdge, g.name(v) + " has no outgoing edge");
    }
    auto table = detail::preferred_table(g, beta);
    if (table[v].empty()) {
        throw Error(ErrorCode::UnreachableTarget, "target unreachable from " + g.name(v));
    }
    return table[v];
}

/// All maximal walks for a single reward at the target. The agent stops at
/// v when zeta(v) > beta * reward; equality keeps it going.
inline std::vector<AgentWalk> agent_walks(const TaskGraph& g, const BiasFactor& beta,
                                          const Rational& reward,
                                          std::size_t cap = kDefaultWalkCap) {
    return enumerate_walks(g, detail::single_reward_table(g, beta, reward), cap);
}

/// Vertices where some walk ends without reaching the target.
inline std::vector<VertexId> abandonment_vertices(const TaskGraph& g, const BiasFactor& beta,
                                                  const Rational& reward) {
    return abandonment_points(g, detail::single_reward_table(g, beta, reward));
}

/// Polynomial check: drop every edge that is not cost-minimising for the
/// agent, then require zeta(v) <= beta * reward on everything still
/// reachable from the source. Never enumerates walks.
inline bool is_motivating(const TaskGraph& g, const BiasFactor& beta, const Rational& reward) {
    if (reward < 0) throw Error(ErrorCode::InvalidReward, "reward must be non-negative");
    auto zeta = perceived_costs(g, beta);
    auto preferred = detail::preferred_table(g, beta);
    std::vector<bool> pruned(g.num_edges(), false);
    for (const auto& edges : preferred) {
        for (EdgeId e : edges) pruned[e] = true;
    }
    auto reach = detail::reachable_from(g, g.source(), pruned);
    const Extended threshold(Rational(beta.value() * reward));
    for (VertexId v = 0; v < g.num_vertices(); ++v) {
        if (!reach[v] || v == g.target()) continue;
        if (zeta[v] > threshold || preferred[v].empty()) return false;
    }
    return true;
}

/// Smallest reward at the target that makes this exact graph motivating.
inline Extended min_motivating_reward_fixed_graph(const TaskGraph& g, const BiasFactor& beta) {
    auto zeta = perceived_costs(g, beta);
    auto preferred = detail::preferred_table(g, beta);
    std::vector<bool> pruned(g.num_edges(), false);
    for (const auto& edges : preferred) {
        for (EdgeId e : edges) pruned[e] = true;
    }
    auto reach = detail::reachable_from(g, g.source(), pruned);
    Extended worst = Rational(0);
    for (VertexId v = 0; v < g.num_vertices(); ++v) {
        if (reach[v] && v != g.target()) worst = std::max(worst, zeta[v]);
    }
    if (worst.is_infinite()) return worst;
    if (beta.value() == 0) {
        if (worst.value() == 0) return Rational(0);
        throw Error(ErrorCode::ZeroBeta, "no finite reward motivates a positive step when beta = 0");
    }
    return Rational(worst.value() / beta.value());
}

} // namespace presbias

#endif // PRESBIAS_AGENT_HPP
