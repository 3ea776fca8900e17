#ifndef PRESBIAS_REWARDS_HPP
#define PRESBIAS_REWARDS_HPP

#include <algorithm>
#include <initializer_list>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "presbias/agent.hpp"
#include "presbias/error.hpp"
#include "presbias/rational.hpp"
#include "presbias/task_graph.hpp"
#include "presbias/walks.hpp"

namespace presbias {

/// Non-negative rewards keyed by vertex name; absent vertices carry zero.
class RewardConfig {
public:
    RewardConfig() = default;
    RewardConfig(std::initializer_list<std::pair<const std::string, Rational>> init) {
        for (const auto& [name, value] : init) set(name, value);
    }

    void set(const std::string& vertex, const Rational& value) {
        if (value < 0) {
            throw Error(ErrorCode::InvalidReward, "negative reward on " + vertex);
        }
        if (value == 0) {
            rewards_.erase(vertex);
        } else {
            rewards_[vertex] = value;
        }
    }

    Rational at(const std::string& vertex) const {
        auto it = rewards_.find(vertex);
        return it == rewards_.end() ? Rational(0) : it->second;
    }

    Rational total() const {
        Rational sum = 0;
        for (const auto& [_, v] : rewards_) sum += v;
        return sum;
    }

    bool empty() const { return rewards_.empty(); }
    const std::map<std::string, Rational>& entries() const { return rewards_; }

    /// Dense per-vertex vector; unknown names are rejected.
    std::vector<Rational> resolve(const TaskGraph& g) const {
        std::vector<Rational> dense(g.num_vertices(), Rational(0));
        for (const auto& [name, value] : rewards_) dense[g.id(name)] = value;
        return dense;
    }

    friend bool operator==(const RewardConfig&, const RewardConfig&) = default;

private:
    std::map<std::string, Rational> rewards_;
};

class Budget {
public:
    explicit Budget(Rational b) : b_(std::move(b)) {
        if (b_ < 0) throw Error(ErrorCode::InvalidBudget, "budget must be non-negative");
    }
    const Rational& value() const { return b_; }

private:
    Rational b_;
};

/// d_r(v): cheapest cost to the target when every entered vertex pays out its
/// reward. Finite values may be negative.
inline std::vector<Extended> reward_adjusted_distances(const TaskGraph& g,
                                                       const std::vector<Rational>& r) {
    std::vector<Extended> dist(g.num_vertices(), Extended::infinity());
    dist[g.target()] = Rational(0);
    auto order = g.topological_order();
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
        VertexId v = *it;
        if (v == g.target()) continue;
        for (EdgeId e : g.out_edges(v)) {
            const Edge& edge = g.edge(e);
            dist[v] = std::min(dist[v], (dist[edge.to] + edge.cost) - r[edge.to]);
        }
    }
    return dist;
}

inline Extended reward_adjusted_distance(const TaskGraph& g, const RewardConfig& cfg, VertexId v) {
    g.check_vertex(v);
    return reward_adjusted_distances(g, cfg.resolve(g))[v];
}

namespace detail {

inline Extended perceived_edge_cost_r(const TaskGraph& g, const BiasFactor& beta,
                                      const std::vector<Rational>& r,
                                      const std::vector<Extended>& dist_r, EdgeId e) {
    const Edge& edge = g.edge(e);
    return edge.cost + scale(beta.value(), dist_r[edge.to] - r[edge.to]);
}

struct RewardView {
    std::vector<Extended> zeta;
    std::vector<std::vector<EdgeId>> preferred;
};

inline RewardView reward_view(const TaskGraph& g, const BiasFactor& beta,
                              const std::vector<Rational>& r) {
    auto dist_r = reward_adjusted_distances(g, r);
    RewardView view;
    view.zeta.assign(g.num_vertices(), Extended::infinity());
    view.preferred.resize(g.num_vertices());
    for (VertexId v = 0; v < g.num_vertices(); ++v) {
        for (EdgeId e : g.out_edges(v)) {
            Extended c = perceived_edge_cost_r(g, beta, r, dist_r, e);
            if (c.is_infinite()) continue;
            if (c < view.zeta[v]) {
                view.zeta[v] = c;
                view.preferred[v].clear();
            }
            if (c == view.zeta[v]) view.preferred[v].push_back(e);
        }
    }
    return view;
}

inline DecisionTable reward_table(const TaskGraph& g, const BiasFactor& beta,
                                  const std::vector<Rational>& r) {
    auto view = reward_view(g, beta, r);
    DecisionTable table;
    table.preferred = std::move(view.preferred);
    table.abandons.resize(g.num_vertices());
    for (VertexId v = 0; v < g.num_vertices(); ++v) {
        table.abandons[v] = v != g.target() && view.zeta[v] > Extended(Rational(0));
    }
    return table;
}

} // namespace detail

/// zeta_r(v) = min over (v,w) of c(v,w) + beta * (d_r(w) - r(w)).
inline std::vector<Extended> perceived_costs_r(const TaskGraph& g, const BiasFactor& beta,
                                               const RewardConfig& cfg) {
    return detail::reward_view(g, beta, cfg.resolve(g)).zeta;
}

inline Extended perceived_cost_r(const TaskGraph& g, const BiasFactor& beta,
                                 const RewardConfig& cfg, VertexId v) {
    g.check_vertex(v);
    return perceived_costs_r(g, beta, cfg)[v];
}

inline std::vector<EdgeId> preferred_edges_r(const TaskGraph& g, const BiasFactor& beta,
                                             const RewardConfig& cfg, VertexId v) {
    g.check_vertex(v);
    return detail::reward_view(g, beta, cfg.resolve(g)).preferred[v];
}

/// All maximal walks; the agent continues iff zeta_r(v) <= 0.
inline std::vector<AgentWalk> agent_walks_r(const TaskGraph& g, const BiasFactor& beta,
                                            const RewardConfig& cfg,
                                            std::size_t cap = kDefaultWalkCap) {
    return enumerate_walks(g, detail::reward_table(g, beta, cfg.resolve(g)), cap);
}

inline std::vector<VertexId> abandonment_vertices_r(const TaskGraph& g, const BiasFactor& beta,
                                                    const RewardConfig& cfg) {
    return abandonment_points(g, detail::reward_table(g, beta, cfg.resolve(g)));
}

namespace detail {

inline std::vector<bool> pruned_edge_mask(const TaskGraph& g,
                                          const std::vector<std::vector<EdgeId>>& preferred) {
    std::vector<bool> mask(g.num_edges(), false);
    for (const auto& edges : preferred) {
        for (EdgeId e : edges) mask[e] = true;
    }
    return mask;
}

inline bool motivating_view(const TaskGraph& g, const RewardView& view) {
    auto reach = reachable_from(g, g.source(), pruned_edge_mask(g, view.preferred));
    for (VertexId v = 0; v < g.num_vertices(); ++v) {
        if (!reach[v] || v == g.target()) continue;
        if (view.zeta[v] > Extended(Rational(0)) || view.preferred[v].empty()) return false;
    }
    return true;
}

} // namespace detail

/// Polynomial check: zeta_r(v) <= 0 on every vertex reachable from the source
/// over cost-minimising edges.
inline bool is_motivating_config(const TaskGraph& g, const BiasFactor& beta,
                                 const RewardConfig& cfg) {
    return detail::motivating_view(g, detail::reward_view(g, beta, cfg.resolve(g)));
}

namespace detail {

inline Rational collected_bound(const TaskGraph& g, const RewardView& view,
                                const std::vector<Rational>& r) {
    auto pruned = g.with_edge_mask(pruned_edge_mask(g, view.preferred));
    return r[g.source()] + max_path_sum(pruned, r, g.source()).value();
}

} // namespace detail

/// Largest total reward the agent can collect on any of its walks, counting
/// a reward on the source.
inline Rational max_collected(const TaskGraph& g, const BiasFactor& beta, const RewardConfig& cfg) {
    auto r = cfg.resolve(g);
    auto view = detail::reward_view(g, beta, r);
    if (!detail::motivating_view(g, view)) {
        throw Error(ErrorCode::NotMotivating, "reward configuration is not motivating");
    }
    return detail::collected_bound(g, view, r);
}

inline bool is_within_budget(const TaskGraph& g, const BiasFactor& beta, const RewardConfig& cfg,
                             const Budget& budget) {
    auto r = cfg.resolve(g);
    auto view = detail::reward_view(g, beta, r);
    if (!detail::motivating_view(g, view)) return false;
    return detail::collected_bound(g, view, r) <= budget.value();
}

} // namespace presbias

#endif // PRESBIAS_REWARDS_HPP
