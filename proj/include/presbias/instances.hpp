#ifndef PRESBIAS_INSTANCES_HPP
#define PRESBIAS_INSTANCES_HPP

#include <cstddef>
#include <cstdlib>
#include <set>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "presbias/error.hpp"
#include "presbias/task_graph.hpp"

namespace presbias {

/// k disjoint connecting paths on a DAG without costs.
struct DcpInstance {
    std::vector<std::string> vertices;
    std::vector<std::pair<std::size_t, std::size_t>> edges;
    std::vector<std::pair<std::size_t, std::size_t>> pairs;

    std::size_t k() const { return pairs.size(); }

    std::size_t index(const std::string& name) const {
        for (std::size_t i = 0; i < vertices.size(); ++i) {
            if (vertices[i] == name) return i;
        }
        throw Error(ErrorCode::UnknownVertex, "unknown vertex '" + name + "'");
    }

    void add_edge(const std::string& from, const std::string& to) {
        edges.emplace_back(index(from), index(to));
    }

    void validate() const {
        auto fail = [](const std::string& msg) { return Error(ErrorCode::InvalidInstance, msg); };
        std::set<std::string> names(vertices.begin(), vertices.end());
        if (names.size() != vertices.size()) throw fail("duplicate vertex name");
        if (pairs.empty()) throw fail("at least one terminal pair required");
        std::set<std::pair<std::size_t, std::size_t>> seen;
        for (auto [a, b] : edges) {
            if (a >= vertices.size() || b >= vertices.size()) throw fail("edge endpoint out of range");
            if (a == b) throw fail("self-loop");
            if (!seen.emplace(a, b).second) throw fail("duplicate edge");
        }
        if (!detail::topological_sort(vertices.size(), edges)) throw fail("graph has a cycle");
        std::set<std::size_t> terminals;
        for (auto [s, t] : pairs) {
            if (s >= vertices.size() || t >= vertices.size()) throw fail("terminal out of range");
            if (!terminals.insert(s).second || !terminals.insert(t).second) {
                throw fail("terminals must be pairwise distinct");
            }
        }
    }
};

/// Does the collection contain k mutually disjoint sets?
struct SetPackingInstance {
    std::vector<std::set<std::string>> sets;
    std::size_t k = 1;

    void validate() const {
        if (k < 1) throw Error(ErrorCode::InvalidInstance, "k must be at least 1");
        if (k > sets.size()) throw Error(ErrorCode::InvalidInstance, "k exceeds the number of sets");
        for (const auto& s : sets) {
            if (s.empty()) throw Error(ErrorCode::InvalidInstance, "sets must be non-empty");
        }
    }
};

/// CNF formula; literal +i is x_i and -i is its negation.
struct CnfFormula {
    int num_vars = 0;
    std::vector<std::vector<int>> clauses;

    void validate() const {
        if (clauses.empty()) throw Error(ErrorCode::EmptyFormula, "formula has no clauses");
        for (const auto& c : clauses) {
            if (c.empty()) throw Error(ErrorCode::InvalidInstance, "empty clause");
            for (int lit : c) {
                if (lit == 0 || std::abs(lit) > num_vars) {
                    throw Error(ErrorCode::InvalidInstance,
                                "literal " + std::to_string(lit) + " out of range");
                }
            }
        }
    }

    bool satisfied_by(const std::vector<bool>& assignment) const {
        for (const auto& c : clauses) {
            bool any = false;
            for (int lit : c) {
                bool value = assignment.at(static_cast<std::size_t>(std::abs(lit) - 1));
                if (lit > 0 ? value : !value) any = true;
            }
            if (!any) return false;
        }
        return true;
    }
};

} // namespace presbias

#endif // PRESBIAS_INSTANCES_HPP
