#ifndef PRESBIAS_TESTS_SUPPORT_HPP
#define PRESBIAS_TESTS_SUPPORT_HPP

#include <cstdint>
#include <initializer_list>
#include <optional>
#include <random>
#include <string>
#include <tuple>
#include <vector>

#include "presbias/rational.hpp"
#include "presbias/task_graph.hpp"

namespace support {

using presbias::Extended;
using presbias::Rational;

inline Rational q(const char* text) { return presbias::parse_rational(text); }

/// Graph from (from, to, cost) triples; vertex list in the given order.
inline presbias::TaskGraph graph(std::vector<std::string> vertices,
                                 std::initializer_list<std::tuple<const char*, const char*, const char*>> edges,
                                 std::string source = "s", std::string target = "t") {
    presbias::GraphSpec spec;
    spec.vertices = std::move(vertices);
    spec.source = std::move(source);
    spec.target = std::move(target);
    for (const auto& [a, b, c] : edges) spec.edges.push_back({a, b, q(c)});
    return presbias::TaskGraph(spec);
}

/// Library infinity and the brute-force "nullopt = infinity" agree.
inline bool same(const Extended& lib, const std::optional<Rational>& ref) {
    if (!ref) return lib.is_infinite();
    return lib.is_finite() && lib.value() == *ref;
}

inline const std::vector<Rational>& beta_grid() {
    static const std::vector<Rational> grid = {Rational(1, 10), Rational(1, 4), Rational(1, 3),
                                               Rational(1, 2),  Rational(2, 3), Rational(9, 10),
                                               Rational(1)};
    return grid;
}

} // namespace support

#endif // PRESBIAS_TESTS_SUPPORT_HPP
