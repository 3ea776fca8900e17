#ifndef PRESBIAS_ORACLES_HPP
#define PRESBIAS_ORACLES_HPP

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "presbias/error.hpp"
#include "presbias/instances.hpp"

namespace presbias {

/// Backtracking k-DCP solver. Returns one vertex sequence per terminal pair.
inline std::optional<std::vector<std::vector<std::size_t>>> brute_dcp(const DcpInstance& inst) {
    inst.validate();
    const std::size_t n = inst.vertices.size();
    std::vector<std::vector<std::size_t>> succ(n);
    for (auto [a, b] : inst.edges) succ[a].push_back(b);

    // A path never touches another pair's terminals.
    std::vector<int> owner(n, -1);
    for (std::size_t i = 0; i < inst.pairs.size(); ++i) {
        owner[inst.pairs[i].first] = static_cast<int>(i);
        owner[inst.pairs[i].second] = static_cast<int>(i);
    }
    std::vector<bool> used(n, false);
    std::vector<std::vector<std::size_t>> paths(inst.pairs.size());

    auto solve_pair = [&](auto&& self, std::size_t pair) -> bool {
        if (pair == inst.pairs.size()) return true;
        auto [s, t] = inst.pairs[pair];
        auto& path = paths[pair];
        path.assign(1, s);
        used[s] = true;
        auto extend = [&](auto&& ext, std::size_t v) -> bool {
            if (v == t) return self(self, pair + 1);
            for (std::size_t w : succ[v]) {
                if (used[w]) continue;
                if (owner[w] != -1 && owner[w] != static_cast<int>(pair)) continue;
                if (w == s) continue;
                used[w] = true;
                path.push_back(w);
                if (ext(ext, w)) return true;
                path.pop_back();
                used[w] = false;
            }
            return false;
        };
        if (extend(extend, s)) return true;
        used[s] = false;
        return false;
    };
    if (solve_pair(solve_pair, 0)) return paths;
    return std::nullopt;
}

/// k pairwise disjoint sets (ascending indices), or none.
inline std::optional<std::vector<std::size_t>> brute_sp(const SetPackingInstance& inst) {
    inst.validate();
    const std::size_t l = inst.sets.size();
    std::vector<std::size_t> chosen;
    auto disjoint_from_chosen = [&](std::size_t j) {
        for (std::size_t c : chosen) {
            for (const auto& x : inst.sets[j]) {
                if (inst.sets[c].count(x)) return false;
            }
        }
        return true;
    };
    auto search = [&](auto&& self, std::size_t from) -> bool {
        if (chosen.size() == inst.k) return true;
        for (std::size_t j = from; j < l; ++j) {
            if (l - j < inst.k - chosen.size()) break;
            if (!disjoint_from_chosen(j)) continue;
            chosen.push_back(j);
            if (self(self, j + 1)) return true;
            chosen.pop_back();
        }
        return false;
    };
    if (search(search, 0)) return chosen;
    return std::nullopt;
}

/// Satisfying assignment by enumeration; entry i is the value of x_{i+1}.
inline std::optional<std::vector<bool>> brute_3sat(const CnfFormula& f) {
    f.validate();
    if (f.num_vars > 30) throw Error(ErrorCode::SearchSpaceTooLarge, "too many variables");
    const std::uint64_t total = std::uint64_t{1} << f.num_vars;
    std::vector<bool> assignment(static_cast<std::size_t>(f.num_vars));
    for (std::uint64_t bits = 0; bits < total; ++bits) {
        for (int i = 0; i < f.num_vars; ++i) assignment[static_cast<std::size_t>(i)] = (bits >> i) & 1U;
        if (f.satisfied_by(assignment)) return assignment;
    }
    return std::nullopt;
}

} // namespace presbias

#endif // PRESBIAS_ORACLES_HPP
