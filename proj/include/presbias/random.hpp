#ifndef PRESBIAS_RANDOM_HPP
#define PRESBIAS_RANDOM_HPP

#include <algorithm>
#include <cstddef>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "presbias/error.hpp"
#include "presbias/instances.hpp"
#include "presbias/rational.hpp"
#include "presbias/task_graph.hpp"

namespace presbias {

struct RandomGraphOptions {
    std::size_t vertices = 6;   // including s and t
    std::size_t max_edges = 10;
    std::vector<Rational> costs = {Rational(0), Rational(1, 2), Rational(1), Rational(2), Rational(3)};
    bool ensure_path = true;    // guarantee an s-t path
};

namespace detail {

template <class Rng>
std::size_t uniform_index(Rng& rng, std::size_t n) {
    return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng);
}

} // namespace detail

/// Random DAG on "s", "a1".."a{n-2}", "t" with every edge pointing forward in
/// that order. Costs are drawn from a small palette so that ties happen.
template <class Rng>
TaskGraph random_task_graph(Rng& rng, const RandomGraphOptions& opt) {
    const std::size_t n = std::max<std::size_t>(opt.vertices, 2);
    GraphSpec spec;
    spec.vertices.push_back("s");
    for (std::size_t i = 1; i + 1 < n; ++i) spec.vertices.push_back("a" + std::to_string(i));
    spec.vertices.push_back("t");
    spec.source = "s";
    spec.target = "t";

    std::vector<std::pair<std::size_t, std::size_t>> chosen;
    std::vector<std::pair<std::size_t, std::size_t>> pool;
    for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t b = a + 1; b < n; ++b) pool.emplace_back(a, b);
    }
    std::shuffle(pool.begin(), pool.end(), rng);
    if (opt.ensure_path) {
        // Random monotone s-t chain first.
        std::size_t at = 0;
        while (at != n - 1 && chosen.size() < opt.max_edges) {
            std::size_t next = at + 1 + detail::uniform_index(rng, n - 1 - at);
            chosen.emplace_back(at, next);
            at = next;
        }
    }
    const std::size_t want = opt.max_edges == 0 ? 0 : 1 + detail::uniform_index(rng, opt.max_edges);
    for (const auto& arc : pool) {
        if (chosen.size() >= want) break;
        if (std::find(chosen.begin(), chosen.end(), arc) == chosen.end()) chosen.push_back(arc);
    }
    std::shuffle(chosen.begin(), chosen.end(), rng);
    for (auto [a, b] : chosen) {
        spec.edges.push_back({spec.vertices[a], spec.vertices[b],
                              opt.costs[detail::uniform_index(rng, opt.costs.size())]});
    }
    return TaskGraph(spec);
}

/// Random k-DCP instance on a DAG with `vertices` vertices ("h1".."hn").
template <class Rng>
DcpInstance random_dcp(Rng& rng, std::size_t vertices, std::size_t k, std::size_t max_edges) {
    if (2 * k > vertices) throw Error(ErrorCode::InvalidInstance, "not enough vertices for k pairs");
    DcpInstance inst;
    for (std::size_t i = 1; i <= vertices; ++i) inst.vertices.push_back("h" + std::to_string(i));
    std::vector<std::size_t> order(vertices);
    for (std::size_t i = 0; i < vertices; ++i) order[i] = i;
    std::shuffle(order.begin(), order.end(), rng);
    std::vector<std::size_t> rank(vertices);
    for (std::size_t i = 0; i < vertices; ++i) rank[order[i]] = i;
    std::vector<std::size_t> pick(order.begin(), order.end());
    std::shuffle(pick.begin(), pick.end(), rng);
    for (std::size_t i = 0; i < k; ++i) {
        std::size_t a = pick[2 * i], b = pick[2 * i + 1];
        if (rank[a] > rank[b]) std::swap(a, b);
        inst.pairs.emplace_back(a, b);
    }
    std::vector<std::pair<std::size_t, std::size_t>> pool;
    for (std::size_t x = 0; x < vertices; ++x) {
        for (std::size_t y = x + 1; y < vertices; ++y) pool.emplace_back(order[x], order[y]);
    }
    std::shuffle(pool.begin(), pool.end(), rng);
    const std::size_t count = detail::uniform_index(rng, std::min(max_edges, pool.size()) + 1);
    inst.edges.assign(pool.begin(), pool.begin() + static_cast<std::ptrdiff_t>(count));
    return inst;
}

} // namespace presbias

#endif // PRESBIAS_RANDOM_HPP
