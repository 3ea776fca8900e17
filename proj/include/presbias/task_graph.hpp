#ifndef PRESBIAS_TASK_GRAPH_HPP
#define PRESBIAS_TASK_GRAPH_HPP

#include <algorithm>
#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "presbias/error.hpp"
#include "presbias/rational.hpp"

namespace presbias {

using VertexId = std::size_t;
using EdgeId = std::size_t;

struct Edge {
    VertexId from;
    VertexId to;
    Rational cost;
};

/// Unchecked, name-based description of a task graph, as read from a file.
struct EdgeSpec {
    std::string from;
    std::string to;
    Rational cost;
};

struct GraphSpec {
    std::vector<std::string> vertices;
    std::string source;
    std::string target;
    std::vector<EdgeSpec> edges;
};

enum class Violation {
    DuplicateVertex,
    MissingSource,
    MissingTarget,
    SourceIsTarget,
    DanglingEndpoint,
    SelfLoop,
    DuplicateEdge,
    NegativeCost,
    CycleFound,
};

constexpr std::string_view violation_name(Violation v) {
    switch (v) {
    case Violation::DuplicateVertex: return "DuplicateVertex";
    case Violation::MissingSource: return "MissingSource";
    case Violation::MissingTarget: return "MissingTarget";
    case Violation::SourceIsTarget: return "SourceIsTarget";
    case Violation::DanglingEndpoint: return "DanglingEndpoint";
    case Violation::SelfLoop: return "SelfLoop";
    case Violation::DuplicateEdge: return "DuplicateEdge";
    case Violation::NegativeCost: return "NegativeCost";
    case Violation::CycleFound: return "CycleFound";
    }
    return "Unknown";
}

struct ValidationIssue {
    Violation kind;
    std::string detail;
};

struct ValidationReport {
    std::vector<ValidationIssue> issues;

    bool ok() const { return issues.empty(); }
    bool contains(Violation kind) const {
        return std::any_of(issues.begin(), issues.end(),
                           [&](const ValidationIssue& i) { return i.kind == kind; });
    }
};

namespace detail {

// Kahn's algorithm; smallest ready index first so the order is reproducible.
// Returns nullopt when the edge set contains a cycle.
inline std::optional<std::vector<VertexId>>
topological_sort(std::size_t n, const std::vector<std::pair<VertexId, VertexId>>& arcs) {
    std::vector<std::vector<VertexId>> succ(n);
    std::vector<std::size_t> indegree(n, 0);
    for (auto [a, b] : arcs) {
        succ[a].push_back(b);
        ++indegree[b];
    }
    std::set<VertexId> ready;
    for (VertexId v = 0; v < n; ++v) {
        if (indegree[v] == 0) ready.insert(v);
    }
    std::vector<VertexId> order;
    order.reserve(n);
    while (!ready.empty()) {
        VertexId v = *ready.begin();
        ready.erase(ready.begin());
        order.push_back(v);
        for (VertexId w : succ[v]) {
            if (--indegree[w] == 0) ready.insert(w);
        }
    }
    if (order.size() != n) return std::nullopt;
    return order;
}

} // namespace detail

/// Lists every broken task-graph invariant; an empty report means the spec
/// describes a valid task graph.
inline ValidationReport validate(const GraphSpec& spec) {
    ValidationReport report;
    auto add = [&](Violation kind, std::string detail) {
        report.issues.push_back({kind, std::move(detail)});
    };

    std::unordered_map<std::string, VertexId> index;
    for (const auto& name : spec.vertices) {
        if (!index.emplace(name, index.size()).second) {
            add(Violation::DuplicateVertex, name);
        }
    }
    // Renumber densely after dropping duplicates.
    index.clear();
    for (const auto& name : spec.vertices) index.emplace(name, index.size());

    bool have_s = index.count(spec.source) > 0;
    bool have_t = index.count(spec.target) > 0;
    if (!have_s) add(Violation::MissingSource, spec.source);
    if (!have_t) add(Violation::MissingTarget, spec.target);
    if (have_s && have_t && spec.source == spec.target) {
        add(Violation::SourceIsTarget, spec.source);
    }

    std::vector<std::pair<VertexId, VertexId>> arcs;
    std::set<std::pair<VertexId, VertexId>> seen;
    for (const auto& e : spec.edges) {
        std::string label = "(" + e.from + "," + e.to + ")";
        if (e.cost < 0) add(Violation::NegativeCost, label + " cost " + to_string(e.cost));
        auto a = index.find(e.from);
        auto b = index.find(e.to);
        if (a == index.end() || b == index.end()) {
            add(Violation::DanglingEndpoint, label);
            continue;
        }
        if (a->second == b->second) {
            add(Violation::SelfLoop, label);
            continue;
        }
        if (!seen.emplace(a->second, b->second).second) {
            add(Violation::DuplicateEdge, label);
            continue;
        }
        arcs.emplace_back(a->second, b->second);
    }
    if (!detail::topological_sort(index.size(), arcs)) {
        add(Violation::CycleFound, "edge set is not acyclic");
    }
    return report;
}

/// Immutable weighted DAG with designated source and target. Vertex ids are
/// positions in the input vertex list; edge ids are positions in the input
/// edge list. Both orders are preserved and drive every tie-break.
class TaskGraph {
public:
    explicit TaskGraph(const GraphSpec& spec) {
        auto report = validate(spec);
        if (!report.ok()) {
            std::string msg = "invalid task graph:";
            for (const auto& issue : report.issues) {
                msg += " ";
                msg += violation_name(issue.kind);
                if (!issue.detail.empty()) msg += "[" + issue.detail + "]";
            }
            throw Error(ErrorCode::InvalidGraph, msg);
        }
        auto table = std::make_shared<VertexTable>();
        table->names = spec.vertices;
        for (VertexId v = 0; v < table->names.size(); ++v) table->index.emplace(table->names[v], v);
        vertices_ = std::move(table);
        source_ = vertices_->index.at(spec.source);
        target_ = vertices_->index.at(spec.target);
        edges_.reserve(spec.edges.size());
        std::vector<std::pair<VertexId, VertexId>> arcs;
        for (const auto& e : spec.edges) {
            edges_.push_back({vertices_->index.at(e.from), vertices_->index.at(e.to), e.cost});
            arcs.emplace_back(edges_.back().from, edges_.back().to);
        }
        topo_ = *detail::topological_sort(num_vertices(), arcs);
        build_adjacency();
    }

    std::size_t num_vertices() const { return vertices_->names.size(); }
    std::size_t num_edges() const { return edges_.size(); }

    VertexId source() const { return source_; }
    VertexId target() const { return target_; }

    const std::string& name(VertexId v) const {
        check_vertex(v);
        return vertices_->names[v];
    }
    const std::vector<std::string>& vertex_names() const { return vertices_->names; }

    std::optional<VertexId> find(std::string_view name) const {
        auto it = vertices_->index.find(std::string(name));
        if (it == vertices_->index.end()) return std::nullopt;
        return it->second;
    }

    VertexId id(std::string_view name) const {
        if (auto v = find(name)) return *v;
        throw Error(ErrorCode::UnknownVertex, "unknown vertex '" + std::string(name) + "'");
    }

    void check_vertex(VertexId v) const {
        if (v >= num_vertices()) {
            throw Error(ErrorCode::UnknownVertex, "vertex id " + std::to_string(v) + " out of range");
        }
    }

    const Edge& edge(EdgeId e) const { return edges_.at(e); }
    std::span<const Edge> edges() const { return edges_; }
    std::span<const EdgeId> out_edges(VertexId v) const {
        check_vertex(v);
        return out_[v];
    }
    std::span<const EdgeId> in_edges(VertexId v) const {
        check_vertex(v);
        return in_[v];
    }

    /// Every edge goes from an earlier to a later position.
    std::span<const VertexId> topological_order() const { return topo_; }

    std::optional<EdgeId> find_edge(VertexId from, VertexId to) const {
        for (EdgeId e : out_edges(from)) {
            if (edges_[e].to == to) return e;
        }
        return std::nullopt;
    }
    EdgeId edge_id(std::string_view from, std::string_view to) const {
        if (auto e = find_edge(id(from), id(to))) return *e;
        throw Error(ErrorCode::InvalidGraph,
                    "no edge (" + std::string(from) + "," + std::string(to) + ")");
    }

    /// Same vertices, source and target; keeps the listed edges in input order.
    TaskGraph with_edges(std::span<const EdgeId> keep) const {
        std::vector<bool> mask(num_edges(), false);
        for (EdgeId e : keep) mask.at(e) = true;
        return with_edge_mask(mask);
    }

    TaskGraph with_edge_mask(const std::vector<bool>& mask) const {
        TaskGraph g(*this, NoCopyEdges{});
        for (EdgeId e = 0; e < num_edges(); ++e) {
            if (mask[e]) g.edges_.push_back(edges_[e]);
        }
        g.build_adjacency();
        return g;
    }

    TaskGraph without_edge(EdgeId removed) const {
        std::vector<bool> mask(num_edges(), true);
        mask.at(removed) = false;
        return with_edge_mask(mask);
    }

    /// Multiplies every edge cost by a positive factor.
    TaskGraph scaled(const Rational& factor) const {
        TaskGraph g(*this);
        for (auto& e : g.edges_) e.cost *= factor;
        return g;
    }

    GraphSpec to_spec() const {
        GraphSpec spec;
        spec.vertices = vertices_->names;
        spec.source = vertices_->names[source_];
        spec.target = vertices_->names[target_];
        for (const auto& e : edges_) {
            spec.edges.push_back({vertices_->names[e.from], vertices_->names[e.to], e.cost});
        }
        return spec;
    }

    friend bool operator==(const TaskGraph& a, const TaskGraph& b) {
        if (a.vertex_names() != b.vertex_names() || a.source_ != b.source_ ||
            a.target_ != b.target_ || a.num_edges() != b.num_edges()) {
            return false;
        }
        for (EdgeId e = 0; e < a.num_edges(); ++e) {
            const auto& x = a.edges_[e];
            const auto& y = b.edges_[e];
            if (x.from != y.from || x.to != y.to || x.cost != y.cost) return false;
        }
        return true;
    }

private:
    struct VertexTable {
        std::vector<std::string> names;
        std::unordered_map<std::string, VertexId> index;
    };
    struct NoCopyEdges {};

    TaskGraph(const TaskGraph& other, NoCopyEdges)
        : vertices_(other.vertices_), source_(other.source_), target_(other.target_),
          topo_(other.topo_) {}

    void build_adjacency() {
        out_.assign(num_vertices(), {});
        in_.assign(num_vertices(), {});
        for (EdgeId e = 0; e < edges_.size(); ++e) {
            out_[edges_[e].from].push_back(e);
            in_[edges_[e].to].push_back(e);
        }
    }

    std::shared_ptr<const VertexTable> vertices_;
    VertexId source_ = 0;
    VertexId target_ = 0;
    std::vector<Edge> edges_;
    std::vector<VertexId> topo_;
    std::vector<std::vector<EdgeId>> out_;
    std::vector<std::vector<EdgeId>> in_;
};

inline ValidationReport validate(const TaskGraph& g) { return validate(g.to_spec()); }

/// Simple path given as its edge sequence.
struct Path {
    std::vector<EdgeId> edges;

    bool empty() const { return edges.empty(); }

    std::vector<VertexId> vertices(const TaskGraph& g) const {
        std::vector<VertexId> out;
        if (edges.empty()) return out;
        out.push_back(g.edge(edges.front()).from);
        for (EdgeId e : edges) out.push_back(g.edge(e).to);
        return out;
    }

    Rational total_cost(const TaskGraph& g) const {
        Rational sum = 0;
        for (EdgeId e : edges) sum += g.edge(e).cost;
        return sum;
    }

    /// Largest single edge cost; zero for the empty path.
    Rational bottleneck(const TaskGraph& g) const {
        Rational worst = 0;
        for (EdgeId e : edges) worst = std::max(worst, g.edge(e).cost);
        return worst;
    }
};

/// d(v) for every vertex, from one reverse-topological pass.
inline std::vector<Extended> cheapest_costs(const TaskGraph& g) {
    std::vector<Extended> dist(g.num_vertices(), Extended::infinity());
    dist[g.target()] = Rational(0);
    auto order = g.topological_order();
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
        VertexId v = *it;
        if (v == g.target()) continue;
        for (EdgeId e : g.out_edges(v)) {
            const Edge& edge = g.edge(e);
            dist[v] = std::min(dist[v], edge.cost + dist[edge.to]);
        }
    }
    return dist;
}

inline Extended cheapest_cost(const TaskGraph& g, VertexId v) {
    g.check_vertex(v);
    return cheapest_costs(g)[v];
}

/// A cheapest s-t path; at each vertex the first tight edge in input order.
inline Path cheapest_path(const TaskGraph& g) {
    auto dist = cheapest_costs(g);
    if (dist[g.source()].is_infinite()) {
        throw Error(ErrorCode::NoPathToTarget, "target unreachable from source");
    }
    Path path;
    for (VertexId v = g.source(); v != g.target();) {
        for (EdgeId e : g.out_edges(v)) {
            const Edge& edge = g.edge(e);
            if (edge.cost + dist[edge.to] == dist[v]) {
                path.edges.push_back(e);
                v = edge.to;
                break;
            }
        }
    }
    return path;
}

/// Maximum, over all paths from `from` to the target, of the summed weights
/// of the vertices entered along the way (`from` itself is not counted).
inline Extended max_path_sum(const TaskGraph& g, const std::vector<Rational>& weights,
                             VertexId from) {
    g.check_vertex(from);
    if (weights.size() != g.num_vertices()) {
        throw Error(ErrorCode::InvalidInstance, "one weight per vertex required");
    }
    std::vector<std::optional<Rational>> best(g.num_vertices());
    best[g.target()] = Rational(0);
    auto order = g.topological_order();
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
        VertexId v = *it;
        if (v == g.target()) continue;
        for (EdgeId e : g.out_edges(v)) {
            const Edge& edge = g.edge(e);
            if (!best[edge.to]) continue;
            Rational through = weights[edge.to] + *best[edge.to];
            if (!best[v] || through > *best[v]) best[v] = through;
        }
    }
    if (!best[from]) {
        throw Error(ErrorCode::NoPathToTarget, "no path from " + g.name(from) + " to target");
    }
    return Extended(*best[from]);
}

inline Extended max_path_sum(const TaskGraph& g,
                             const std::map<std::string, Rational>& weights, VertexId from) {
    std::vector<Rational> dense(g.num_vertices(), Rational(0));
    for (const auto& [name, w] : weights) dense[g.id(name)] = w;
    return max_path_sum(g, dense, from);
}

namespace detail {

inline std::vector<bool> reachable_from(const TaskGraph& g, VertexId start,
                                        const std::vector<bool>& edge_on) {
    std::vector<bool> seen(g.num_vertices(), false);
    std::vector<VertexId> stack{start};
    seen[start] = true;
    while (!stack.empty()) {
        VertexId v = stack.back();
        stack.pop_back();
        for (EdgeId e : g.out_edges(v)) {
            if (!edge_on[e]) continue;
            VertexId w = g.edge(e).to;
            if (!seen[w]) {
                seen[w] = true;
                stack.push_back(w);
            }
        }
    }
    return seen;
}

// Depth-first search in edge input order; returns the first s-t path found.
inline std::optional<Path> first_path(const TaskGraph& g, const std::vector<bool>& edge_on) {
    std::vector<bool> dead(g.num_vertices(), false);
    Path path;
    auto dfs = [&](auto&& self, VertexId v) -> bool {
        if (v == g.target()) return true;
        for (EdgeId e : g.out_edges(v)) {
            if (!edge_on[e]) continue;
            VertexId w = g.edge(e).to;
            if (dead[w]) continue;
            path.edges.push_back(e);
            if (self(self, w)) return true;
            path.edges.pop_back();
        }
        dead[v] = true;
        return false;
    };
    if (dfs(dfs, g.source())) return path;
    return std::nullopt;
}

} // namespace detail

/// Path minimising the largest edge cost. Edges are inserted in non-decreasing
/// cost order (ties by input order) until the target becomes reachable; the
/// returned path is the first one a depth-first search finds in that subgraph.
inline Path minmax_path(const TaskGraph& g) {
    std::vector<EdgeId> order(g.num_edges());
    for (EdgeId e = 0; e < order.size(); ++e) order[e] = e;
    std::stable_sort(order.begin(), order.end(), [&](EdgeId a, EdgeId b) {
        return g.edge(a).cost < g.edge(b).cost;
    });
    std::vector<bool> inserted(g.num_edges(), false);
    std::vector<bool> reach(g.num_vertices(), false);
    reach[g.source()] = true;
    for (EdgeId e : order) {
        inserted[e] = true;
        // Reachability only changes when the new edge leaves a reached vertex.
        if (!reach[g.edge(e).from] || reach[g.edge(e).to]) continue;
        reach = detail::reachable_from(g, g.source(), inserted);
        if (reach[g.target()]) return *detail::first_path(g, inserted);
    }
    throw Error(ErrorCode::NoPathToTarget, "target unreachable from source");
}

} // namespace presbias

#endif // PRESBIAS_TASK_GRAPH_HPP
