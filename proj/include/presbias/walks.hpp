#ifndef PRESBIAS_WALKS_HPP
#define PRESBIAS_WALKS_HPP

#include <cstddef>
#include <vector>

#include "presbias/error.hpp"
#include "presbias/rational.hpp"
#include "presbias/task_graph.hpp"

namespace presbias {

inline constexpr std::size_t kDefaultWalkCap = 1'000'000;

enum class Outcome { ReachedTarget, Abandoned };

/// Maximal agent walk from the source. `last` is the target for a completed
/// walk and the abandonment vertex otherwise.
struct AgentWalk {
    std::vector<EdgeId> edges;
    Outcome outcome = Outcome::ReachedTarget;
    VertexId last = 0;

    friend bool operator==(const AgentWalk&, const AgentWalk&) = default;
};

/// Per-vertex behaviour of an agent: the edges it is willing to take and
/// whether it gives up on arrival. Both agent models reduce to this table.
struct DecisionTable {
    std::vector<std::vector<EdgeId>> preferred;
    std::vector<bool> abandons;
};

namespace detail {

// Vertices reachable from the source over preferred edges, continuing only
// out of vertices where the agent keeps going.
inline std::vector<bool> visited_vertices(const TaskGraph& g, const DecisionTable& table) {
    std::vector<bool> seen(g.num_vertices(), false);
    std::vector<VertexId> stack{g.source()};
    seen[g.source()] = true;
    while (!stack.empty()) {
        VertexId v = stack.back();
        stack.pop_back();
        if (v == g.target() || table.abandons[v]) continue;
        for (EdgeId e : table.preferred[v]) {
            VertexId w = g.edge(e).to;
            if (!seen[w]) {
                seen[w] = true;
                stack.push_back(w);
            }
        }
    }
    return seen;
}

} // namespace detail

/// Vertices at which some walk ends by abandonment, in vertex order.
inline std::vector<VertexId> abandonment_points(const TaskGraph& g, const DecisionTable& table) {
    auto seen = detail::visited_vertices(g, table);
    std::vector<VertexId> out;
    for (VertexId v = 0; v < g.num_vertices(); ++v) {
        if (seen[v] && v != g.target() && table.abandons[v]) out.push_back(v);
    }
    return out;
}

/// Number of distinct walks, saturating at cap + 1.
inline std::size_t count_walks(const TaskGraph& g, const DecisionTable& table, std::size_t cap) {
    std::vector<std::size_t> count(g.num_vertices(), 0);
    auto order = g.topological_order();
    const std::size_t limit = cap + 1;
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
        VertexId v = *it;
        if (v == g.target() || table.abandons[v]) {
            count[v] = 1;
            continue;
        }
        std::size_t total = 0;
        for (EdgeId e : table.preferred[v]) {
            total += count[g.edge(e).to];
            if (total >= limit) {
                total = limit;
                break;
            }
        }
        count[v] = total;
    }
    return count[g.source()];
}

/// Expands every walk; throws WalkExplosion when there are more than `cap`.
inline std::vector<AgentWalk> enumerate_walks(const TaskGraph& g, const DecisionTable& table,
                                              std::size_t cap) {
    std::size_t total = count_walks(g, table, cap);
    if (total > cap) {
        throw Error(ErrorCode::WalkExplosion,
                    "more than " + std::to_string(cap) + " agent walks");
    }
    std::vector<AgentWalk> walks;
    walks.reserve(total);
    std::vector<EdgeId> prefix;
    auto dfs = [&](auto&& self, VertexId v) -> void {
        if (v == g.target()) {
            walks.push_back({prefix, Outcome::ReachedTarget, v});
            return;
        }
        if (table.abandons[v]) {
            walks.push_back({prefix, Outcome::Abandoned, v});
            return;
        }
        for (EdgeId e : table.preferred[v]) {
            prefix.push_back(e);
            self(self, g.edge(e).to);
            prefix.pop_back();
        }
    };
    dfs(dfs, g.source());
    return walks;
}

} // namespace presbias

#endif // PRESBIAS_WALKS_HPP
