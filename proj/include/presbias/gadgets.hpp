#ifndef PRESBIAS_GADGETS_HPP
#define PRESBIAS_GADGETS_HPP

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "presbias/agent.hpp"
#include "presbias/error.hpp"
#include "presbias/instances.hpp"
#include "presbias/rational.hpp"
#include "presbias/rewards.hpp"
#include "presbias/task_graph.hpp"

namespace presbias {

/// Edge costs [(1-b)^(len-1), ..., (1-b), 1]. From every position j, the cost
/// at j plus beta times the remaining costs is exactly 1.
inline std::vector<Rational> unit_chain(std::size_t len, const BiasFactor& beta) {
    if (len == 0) throw Error(ErrorCode::InvalidInstance, "chain length must be positive");
    const Rational keep = 1 - beta.value();
    std::vector<Rational> costs(len);
    Rational power = 1;
    for (std::size_t i = len; i-- > 0;) {
        costs[i] = power;
        power *= keep;
    }
    return costs;
}

/// sum_{j=0}^{count-1} base^j
inline Rational geometric_sum(const Rational& base, unsigned count) {
    Rational sum = 0;
    Rational power = 1;
    for (unsigned j = 0; j < count; ++j) {
        sum += power;
        power *= base;
    }
    return sum;
}

/// Procrastination graph: one vertex per day, free postponement, washing on
/// day i costs i/50.
inline TaskGraph gen_carwash(unsigned days) {
    if (days < 2) throw Error(ErrorCode::InvalidInstance, "car wash needs at least two days");
    auto day = [](unsigned i) { return i == 1 ? std::string("s") : "v_" + std::to_string(i); };
    GraphSpec spec;
    for (unsigned i = 1; i <= days; ++i) spec.vertices.push_back(day(i));
    spec.vertices.push_back("t");
    spec.source = "s";
    spec.target = "t";
    for (unsigned i = 1; i <= days; ++i) {
        if (i < days) spec.edges.push_back({day(i), day(i + 1), Rational(0)});
        spec.edges.push_back({day(i), "t", ratio(static_cast<long>(i), 50)});
    }
    for (auto& e : spec.edges) e.cost.canonicalize();
    return TaskGraph(spec);
}

/// Chore graph: s -1-> v, then either v -0-> t or v -6-> w -0-> t.
inline TaskGraph gen_twopath() {
    GraphSpec spec;
    spec.vertices = {"s", "v", "w", "t"};
    spec.source = "s";
    spec.target = "t";
    spec.edges = {{"s", "v", Rational(1)}, {"v", "w", Rational(6)},
                  {"v", "t", Rational(0)}, {"w", "t", Rational(0)}};
    return TaskGraph(spec);
}

/// Name under which a vertex of an embedded DCP graph appears.
inline std::string embedded_name(const std::string& h_vertex) { return "h_" + h_vertex; }

namespace detail {

inline Rational resolve_epsilon(const std::optional<Rational>& epsilon, const Rational& bound) {
    if (!epsilon) return Rational(bound / 2);
    if (*epsilon <= 0 || *epsilon >= bound) {
        throw Error(ErrorCode::InvalidEpsilon, "epsilon " + to_string(*epsilon) +
                                                   " must lie strictly between 0 and " + to_string(bound));
    }
    return *epsilon;
}

inline void require_open_beta(const BiasFactor& beta) {
    if (beta.value() <= 0 || beta.value() >= 1) {
        throw Error(ErrorCode::InvalidBeta, "beta must lie strictly between 0 and 1");
    }
}

inline void embed_dcp(GraphSpec& spec, const DcpInstance& inst) {
    for (const auto& v : inst.vertices) spec.vertices.push_back(embedded_name(v));
    for (auto [a, b] : inst.edges) {
        spec.edges.push_back({embedded_name(inst.vertices[a]), embedded_name(inst.vertices[b]), Rational(0)});
    }
}

inline std::string idx(const std::string& stem, std::size_t i) { return stem + "_" + std::to_string(i); }

} // namespace detail

/// Motivating-subgraph instance built around a DCP instance.
struct MsReduction {
    TaskGraph graph;
    Rational beta;
    Rational epsilon;
    Rational reward;  // 1 / beta
};

inline Rational ms_epsilon_bound(std::size_t k, const BiasFactor& beta) {
    const Rational& b = beta.value();
    const Rational keep = 1 - b;
    Rational first = b * keep / Rational(static_cast<unsigned long>(k + 1));
    Rational second = b * pow(keep, 3) / (1 + b);
    return std::min(first, second);
}

/// Main path s, v_1..v_{k+3}, t with one shortcut v_i -> w_i -> s_i per pair
/// and t_i -> t leaving the embedded graph. The graph has a motivating
/// subgraph for reward 1/beta iff the DCP instance is feasible.
inline MsReduction gen_ms_from_dcp(const DcpInstance& inst, const BiasFactor& beta,
                                   std::optional<Rational> epsilon = std::nullopt) {
    inst.validate();
    detail::require_open_beta(beta);
    const std::size_t k = inst.k();
    const Rational eps = detail::resolve_epsilon(epsilon, ms_epsilon_bound(k, beta));
    const Rational keep = 1 - beta.value();
    const Rational kp1(static_cast<unsigned long>(k + 1));

    GraphSpec spec;
    spec.source = "s";
    spec.target = "t";
    spec.vertices.push_back("s");
    for (std::size_t i = 1; i <= k + 3; ++i) spec.vertices.push_back(detail::idx("v", i));
    for (std::size_t i = 1; i <= k; ++i) spec.vertices.push_back(detail::idx("w", i));
    detail::embed_dcp(spec, inst);
    spec.vertices.push_back("t");

    auto main = [&](std::size_t i) { return i == 0 ? std::string("s") : detail::idx("v", i); };
    const Rational step = pow(keep, 3) - eps;
    for (std::size_t i = 0; i <= k; ++i) spec.edges.push_back({main(i), main(i + 1), step});
    auto tail = unit_chain(3, beta);
    spec.edges.push_back({main(k + 1), main(k + 2), tail[0]});
    spec.edges.push_back({main(k + 2), main(k + 3), tail[1]});
    spec.edges.push_back({main(k + 3), "t", tail[2]});
    for (std::size_t i = 1; i <= k; ++i) {
        const auto& [s_i, t_i] = inst.pairs[i - 1];
        const Rational ii(static_cast<unsigned long>(i));
        spec.edges.push_back({main(i), detail::idx("w", i), pow(keep, 2)});
        spec.edges.push_back({detail::idx("w", i), embedded_name(inst.vertices[s_i]),
                              Rational((kp1 - ii) * keep / kp1)});
        spec.edges.push_back({embedded_name(inst.vertices[t_i]), "t", Rational(ii * keep / kp1 + 1)});
    }
    return {TaskGraph(spec), beta.value(), eps, Rational(1 / beta.value())};
}

/// Gap instance: amplification path followed by a central unit.
struct HardnessReduction {
    TaskGraph graph;
    Rational beta;  // 1 / (3 rho + 3)
    Rational epsilon;
    unsigned rho;
};

inline Rational hardness_beta(unsigned rho) { return Rational(1, 3 * rho + 3); }

inline Rational hardness_epsilon_bound(std::size_t k, unsigned rho) {
    const Rational b = hardness_beta(rho);
    const Rational keep = 1 - b;
    const Rational full = pow(keep, 3 * rho + 3);
    std::vector<Rational> terms = {
        Rational(b * pow(keep, 3 * rho + 1) / Rational(static_cast<unsigned long>(k + 1))),
        Rational(b * full / (1 + b)),
        Rational(1, rho + 1),
        Rational(full - Rational(1, 3)),
    };
    return *std::min_element(terms.begin(), terms.end());
}

/// Vertices s, u_1..u_{9 rho^2}, z, v_1..v_{k+3rho+3}, w_1..w_k, the embedded
/// DCP graph, t. If the DCP instance is feasible some subgraph is motivating
/// for reward 1/beta; otherwise none is for any reward up to rho/beta.
inline HardnessReduction gen_hardness(const DcpInstance& inst, unsigned rho,
                                      std::optional<Rational> epsilon = std::nullopt) {
    inst.validate();
    if (rho < 1) throw Error(ErrorCode::InvalidInstance, "rho must be a positive integer");
    const std::size_t k = inst.k();
    const BiasFactor beta(hardness_beta(rho));
    const Rational eps = detail::resolve_epsilon(epsilon, hardness_epsilon_bound(k, rho));
    const Rational keep = 1 - beta.value();
    const Rational kp1(static_cast<unsigned long>(k + 1));
    const Rational step = pow(keep, 3 * rho + 3) - eps;
    const std::size_t amp = 9 * static_cast<std::size_t>(rho) * rho;
    const std::size_t central = k + 3 * rho + 3;

    GraphSpec spec;
    spec.source = "s";
    spec.target = "t";
    spec.vertices.push_back("s");
    for (std::size_t i = 1; i <= amp; ++i) spec.vertices.push_back(detail::idx("u", i));
    spec.vertices.push_back("z");
    for (std::size_t i = 1; i <= central; ++i) spec.vertices.push_back(detail::idx("v", i));
    for (std::size_t i = 1; i <= k; ++i) spec.vertices.push_back(detail::idx("w", i));
    detail::embed_dcp(spec, inst);
    spec.vertices.push_back("t");

    // Amplification unit.
    auto u = [&](std::size_t i) { return i == 0 ? std::string("s") : detail::idx("u", i); };
    for (std::size_t i = 0; i < amp; ++i) {
        spec.edges.push_back({u(i), u(i + 1), step});
        spec.edges.push_back({u(i + 1), "z", pow(keep, 3 * rho + 2)});
    }
    spec.edges.push_back({"z", "t", geometric_sum(keep, 3 * rho + 2)});

    // Central unit main path.
    auto v = [&](std::size_t i) {
        if (i == 0) return u(amp);
        if (i == central + 1) return std::string("t");
        return detail::idx("v", i);
    };
    for (std::size_t i = 0; i <= k; ++i) spec.edges.push_back({v(i), v(i + 1), step});
    auto tail = unit_chain(3 * rho + 3, beta);
    for (std::size_t j = 0; j < tail.size(); ++j) spec.edges.push_back({v(k + 1 + j), v(k + 2 + j), tail[j]});

    const Rational edge_part = pow(keep, 3 * rho + 1);
    const Rational base_exit = geometric_sum(keep, 3 * rho + 1);
    for (std::size_t i = 1; i <= k; ++i) {
        const auto& [s_i, t_i] = inst.pairs[i - 1];
        const Rational ii(static_cast<unsigned long>(i));
        spec.edges.push_back({v(i), detail::idx("w", i), pow(keep, 3 * rho + 2)});
        spec.edges.push_back({detail::idx("w", i), embedded_name(inst.vertices[s_i]),
                              Rational((kp1 - ii) * edge_part / kp1)});
        spec.edges.push_back({embedded_name(inst.vertices[t_i]), "t",
                              Rational(ii * edge_part / kp1 + base_exit)});
    }
    return {TaskGraph(spec), beta.value(), eps, rho};
}

/// Keeps only the embedded edges that lie on the given DCP solution paths;
/// every gadget edge stays.
inline TaskGraph dcp_witness_subgraph(const TaskGraph& g, const DcpInstance& inst,
                                      const std::vector<std::vector<std::size_t>>& paths) {
    std::set<std::pair<std::string, std::string>> keep;
    for (const auto& p : paths) {
        for (std::size_t i = 0; i + 1 < p.size(); ++i) {
            keep.emplace(embedded_name(inst.vertices[p[i]]), embedded_name(inst.vertices[p[i + 1]]));
        }
    }
    std::set<std::pair<std::string, std::string>> embedded;
    for (auto [a, b] : inst.edges) embedded.emplace(embedded_name(inst.vertices[a]), embedded_name(inst.vertices[b]));
    std::vector<bool> mask(g.num_edges(), true);
    for (EdgeId e = 0; e < g.num_edges(); ++e) {
        std::pair<std::string, std::string> key(g.name(g.edge(e).from), g.name(g.edge(e).to));
        if (embedded.count(key) && !keep.count(key)) mask[e] = false;
    }
    return g.with_edge_mask(mask);
}

/// Reward-configuration instance built from a set packing instance.
struct MrcReduction {
    TaskGraph graph;
    Budget budget;
    Rational beta;
    Rational epsilon;
    std::size_t levels;  // k
    std::size_t columns; // number of sets
};

inline Rational mrc_epsilon_bound(std::size_t k, const BiasFactor& beta) {
    const Rational& b = beta.value();
    const Rational kk(static_cast<unsigned long>(k));
    Rational first = (1 - b) * (1 - b) / kk;
    Rational second = (b - b * b) / (kk - 1 + b);
    return std::min(first, second);
}

inline std::string sp_vertex(char stem, std::size_t level, std::size_t column) {
    return std::string(1, stem) + "_" + std::to_string(level) + "_" + std::to_string(column);
}

/// k levels of one vertex v_{i,j} per set, full upward connections, a
/// shortcut v_{i,j} -> w_{i,j} -> t per vertex, and two-edge downward paths
/// from v_{i,j} to w_{i',j'} for every lower level i' whose set meets S_j.
/// For b > 0 the old target becomes t' with an extra edge (t', t) of cost
/// beta * b.
inline MrcReduction gen_mrc_from_sp(const SetPackingInstance& inst, const BiasFactor& beta,
                                    const Budget& budget,
                                    std::optional<Rational> epsilon = std::nullopt) {
    inst.validate();
    detail::require_open_beta(beta);
    const std::size_t k = inst.k;
    const std::size_t l = inst.sets.size();
    const Rational eps = detail::resolve_epsilon(epsilon, mrc_epsilon_bound(k, beta));
    const Rational& b = beta.value();
    const Rational up = 1 - b - eps;
    const Rational down = (1 - b - Rational(static_cast<unsigned long>(k)) * eps) / (b - b * b);
    const bool extra_target = budget.value() > 0;
    const std::string sink = extra_target ? "t'" : "t";

    auto meets = [&](std::size_t j, std::size_t jj) {
        for (const auto& x : inst.sets[j]) {
            if (inst.sets[jj].count(x)) return true;
        }
        return false;
    };

    GraphSpec spec;
    spec.source = "s";
    spec.target = "t";
    spec.vertices.push_back("s");
    for (std::size_t i = 1; i <= k; ++i) {
        for (std::size_t j = 1; j <= l; ++j) spec.vertices.push_back(sp_vertex('v', i, j));
    }
    for (std::size_t i = 1; i <= k; ++i) {
        for (std::size_t j = 1; j <= l; ++j) spec.vertices.push_back(sp_vertex('w', i, j));
    }
    std::vector<EdgeSpec> downward;
    for (std::size_t i = 2; i <= k; ++i) {
        for (std::size_t j = 1; j <= l; ++j) {
            for (std::size_t ii = 1; ii < i; ++ii) {
                for (std::size_t jj = 1; jj <= l; ++jj) {
                    if (!meets(j - 1, jj - 1)) continue;
                    std::string mid = "x_" + std::to_string(i) + "_" + std::to_string(j) + "_" +
                                      std::to_string(ii) + "_" + std::to_string(jj);
                    spec.vertices.push_back(mid);
                    downward.push_back({sp_vertex('v', i, j), mid, Rational(0)});
                    downward.push_back({mid, sp_vertex('w', ii, jj), down});
                }
            }
        }
    }
    if (extra_target) spec.vertices.push_back(sink);
    spec.vertices.push_back("t");

    for (std::size_t j = 1; j <= l; ++j) spec.edges.push_back({"s", sp_vertex('v', 1, j), up});
    for (std::size_t i = 1; i <= k; ++i) {
        for (std::size_t j = 1; j <= l; ++j) {
            const auto from = sp_vertex('v', i, j);
            if (i < k) {
                for (std::size_t jj = 1; jj <= l; ++jj) spec.edges.push_back({from, sp_vertex('v', i + 1, jj), up});
            } else {
                spec.edges.push_back({from, sink, Rational(0)});
            }
            spec.edges.push_back({from, sp_vertex('w', i, j), Rational(1)});
            spec.edges.push_back({sp_vertex('w', i, j), sink, Rational(0)});
        }
    }
    spec.edges.insert(spec.edges.end(), downward.begin(), downward.end());
    if (extra_target) spec.edges.push_back({sink, "t", Rational(b * budget.value())});
    return {TaskGraph(spec), budget, beta.value(), eps, k, l};
}

/// Places (1 - eps)/beta on w_{i,j_i} for the i-th chosen set (and b on t
/// when the budget is positive).
inline RewardConfig sp_witness_config(const MrcReduction& red, const std::vector<std::size_t>& selection) {
    if (selection.size() != red.levels) {
        throw Error(ErrorCode::InvalidInstance, "selection must name one set per level");
    }
    RewardConfig cfg;
    const Rational bait = (1 - red.epsilon) / red.beta;
    for (std::size_t i = 0; i < selection.size(); ++i) {
        cfg.set(sp_vertex('w', i + 1, selection[i] + 1), bait);
    }
    if (red.budget.value() > 0) cfg.set("t", red.budget.value());
    return cfg;
}

/// k-DCP instance from a CNF formula: a high and a low path per variable, one
/// path per literal per clause, sharing an occurrence vertex v_{i,j,k}.
/// Positive occurrences sit on the low path, negated ones on the high path,
/// ordered by clause index.
inline DcpInstance gen_dcp_from_3sat(const CnfFormula& f) {
    f.validate();
    for (const auto& c : f.clauses) {
        if (c.size() > 3) throw Error(ErrorCode::InvalidInstance, "clauses must have at most 3 literals");
    }
    DcpInstance inst;
    auto var_s = [](int i) { return "s_" + std::to_string(i); };
    auto var_t = [](int i) { return "t_" + std::to_string(i); };
    auto cl_s = [](std::size_t j) { return "s'_" + std::to_string(j); };
    auto cl_t = [](std::size_t j) { return "t'_" + std::to_string(j); };
    auto occ = [](int i, std::size_t j, std::size_t k) {
        return "v_" + std::to_string(i) + "_" + std::to_string(j) + "_" + std::to_string(k);
    };
    for (int i = 1; i <= f.num_vars; ++i) {
        inst.vertices.push_back(var_s(i));
        inst.vertices.push_back(var_t(i));
    }
    for (std::size_t j = 1; j <= f.clauses.size(); ++j) {
        inst.vertices.push_back(cl_s(j));
        inst.vertices.push_back(cl_t(j));
    }
    std::map<int, std::vector<std::string>> low, high;
    for (std::size_t j = 1; j <= f.clauses.size(); ++j) {
        const auto& clause = f.clauses[j - 1];
        for (std::size_t k = 1; k <= clause.size(); ++k) {
            int lit = clause[k - 1];
            int i = std::abs(lit);
            auto name = occ(i, j, k);
            inst.vertices.push_back(name);
            (lit > 0 ? low : high)[i].push_back(name);
        }
    }
    std::set<std::pair<std::string, std::string>> added;
    auto link = [&](const std::string& a, const std::string& b) {
        if (added.emplace(a, b).second) inst.add_edge(a, b);
    };
    for (int i = 1; i <= f.num_vars; ++i) {
        for (auto* side : {&high, &low}) {
            std::string prev = var_s(i);
            for (const auto& name : (*side)[i]) {
                link(prev, name);
                prev = name;
            }
            link(prev, var_t(i));
        }
    }
    for (std::size_t j = 1; j <= f.clauses.size(); ++j) {
        const auto& clause = f.clauses[j - 1];
        for (std::size_t k = 1; k <= clause.size(); ++k) {
            auto name = occ(std::abs(clause[k - 1]), j, k);
            link(cl_s(j), name);
            link(name, cl_t(j));
        }
    }
    for (int i = 1; i <= f.num_vars; ++i) inst.pairs.emplace_back(inst.index(var_s(i)), inst.index(var_t(i)));
    for (std::size_t j = 1; j <= f.clauses.size(); ++j) {
        inst.pairs.emplace_back(inst.index(cl_s(j)), inst.index(cl_t(j)));
    }
    return inst;
}

} // namespace presbias

#endif // PRESBIAS_GADGETS_HPP
