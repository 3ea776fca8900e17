#include <random>

#include <gtest/gtest.h>

#include "brute.hpp"
#include "presbias/random.hpp"
#include "presbias/task_graph.hpp"
#include "support.hpp"

using namespace presbias;
using support::graph;
using support::q;

namespace {

template <class F>
ErrorCode code_of(F&& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.code();
    }
    ADD_FAILURE() << "no exception";
    return ErrorCode::UsageError;
}

GraphSpec diamond_spec() {
    GraphSpec spec;
    spec.vertices = {"s", "a", "b", "t"};
    spec.source = "s";
    spec.target = "t";
    spec.edges = {{"s", "a", 1}, {"s", "b", 2}, {"a", "t", 3}, {"b", "t", 1}};
    return spec;
}

} // namespace

TEST(Rational, ParsesIntegersFractionsAndDecimals) {
    EXPECT_EQ(parse_rational("3"), 3);
    EXPECT_EQ(parse_rational("18/5"), Rational(18, 5));
    EXPECT_EQ(parse_rational("-2/4"), Rational(-1, 2));
    EXPECT_EQ(parse_rational("+7"), 7);
    EXPECT_EQ(parse_rational("0.25"), Rational(1, 4));
    EXPECT_EQ(parse_rational("1.10"), Rational(11, 10));
    EXPECT_EQ(parse_rational(".5"), Rational(1, 2));
    EXPECT_EQ(parse_rational("0.1") * 10, 1);
}

TEST(Rational, RejectsMalformedText) {
    for (const char* bad : {"", "abc", "1/0", "1.2.3", "/3", "3/", "1e3", "-", ".", "1/-2", " 1"}) {
        EXPECT_EQ(code_of([&] { parse_rational(bad); }), ErrorCode::InvalidRational) << bad;
    }
}

TEST(Rational, PrintsLowestTerms) {
    EXPECT_EQ(to_string(ratio(6, 4)), "3/2");
    EXPECT_EQ(to_string(ratio(4, 2)), "2");
    EXPECT_EQ(to_string(ratio(3, -6)), "-1/2");
    EXPECT_EQ(ratio(10, 50), Rational(1, 5));
    EXPECT_EQ(to_string(Rational(0)), "0");
}

TEST(Extended, InfinityOrderingAndArithmetic) {
    Extended inf = Extended::infinity();
    Extended two(Rational(2));
    EXPECT_TRUE(inf.is_infinite());
    EXPECT_LT(two, inf);
    EXPECT_EQ(inf, Extended::infinity());
    EXPECT_TRUE((inf + two).is_infinite());
    EXPECT_TRUE((Rational(5) + inf).is_infinite());
    EXPECT_EQ((two + Rational(1, 2)).value(), Rational(5, 2));
    EXPECT_TRUE((inf - Rational(3)).is_infinite());
    EXPECT_EQ(scale(Rational(0), inf), Extended(Rational(0)));
    EXPECT_TRUE(scale(Rational(1, 2), inf).is_infinite());
    EXPECT_EQ(scale(Rational(1, 2), two).value(), 1);
    EXPECT_EQ(inf.to_string(), "inf");
    EXPECT_EQ(code_of([&] { (void)inf.value(); }), ErrorCode::UnreachableTarget);
}

TEST(Validate, AcceptsWellFormedGraph) {
    EXPECT_TRUE(validate(diamond_spec()).ok());
    TaskGraph g(diamond_spec());
    EXPECT_TRUE(validate(g).ok());
}

TEST(Validate, ReportsEveryKindOfViolation) {
    auto with = [](auto edit) {
        GraphSpec spec = diamond_spec();
        edit(spec);
        return validate(spec);
    };
    EXPECT_TRUE(with([](GraphSpec& s) { s.vertices.push_back("a"); }).contains(Violation::DuplicateVertex));
    EXPECT_TRUE(with([](GraphSpec& s) { s.source = "zz"; }).contains(Violation::MissingSource));
    EXPECT_TRUE(with([](GraphSpec& s) { s.target = "zz"; }).contains(Violation::MissingTarget));
    EXPECT_TRUE(with([](GraphSpec& s) { s.target = "s"; }).contains(Violation::SourceIsTarget));
    EXPECT_TRUE(with([](GraphSpec& s) { s.edges.push_back({"a", "q", 0}); }).contains(Violation::DanglingEndpoint));
    EXPECT_TRUE(with([](GraphSpec& s) { s.edges.push_back({"a", "a", 0}); }).contains(Violation::SelfLoop));
    EXPECT_TRUE(with([](GraphSpec& s) { s.edges.push_back({"s", "a", 5}); }).contains(Violation::DuplicateEdge));
    EXPECT_TRUE(with([](GraphSpec& s) { s.edges[0].cost = -1; }).contains(Violation::NegativeCost));
    EXPECT_TRUE(with([](GraphSpec& s) {
                    s.edges.push_back({"a", "b", 0});
                    s.edges.push_back({"b", "a", 0});
                }).contains(Violation::CycleFound));
}

TEST(TaskGraph, ConstructorRejectsInvalidSpec) {
    GraphSpec spec = diamond_spec();
    spec.edges.push_back({"t", "s", 0});
    EXPECT_EQ(code_of([&] { TaskGraph g(spec); }), ErrorCode::InvalidGraph);
}

TEST(TaskGraph, LookupAndAdjacency) {
    TaskGraph g(diamond_spec());
    EXPECT_EQ(g.num_vertices(), 4u);
    EXPECT_EQ(g.num_edges(), 4u);
    EXPECT_EQ(g.name(g.source()), "s");
    EXPECT_EQ(g.name(g.target()), "t");
    EXPECT_EQ(g.out_edges(g.id("s")).size(), 2u);
    EXPECT_EQ(g.in_edges(g.id("t")).size(), 2u);
    EXPECT_EQ(g.edge(g.edge_id("b", "t")).cost, 1);
    EXPECT_FALSE(g.find_edge(g.id("a"), g.id("b")).has_value());
    EXPECT_FALSE(g.find("nope").has_value());
    EXPECT_EQ(code_of([&] { g.id("nope"); }), ErrorCode::UnknownVertex);
    EXPECT_EQ(code_of([&] { g.edge_id("a", "b"); }), ErrorCode::InvalidGraph);
}

TEST(TaskGraph, TopologicalOrderRespectsEdges) {
    std::mt19937_64 rng(7);
    for (int round = 0; round < 50; ++round) {
        auto g = random_task_graph(rng, {});
        std::vector<std::size_t> pos(g.num_vertices());
        auto order = g.topological_order();
        ASSERT_EQ(order.size(), g.num_vertices());
        for (std::size_t i = 0; i < order.size(); ++i) pos[order[i]] = i;
        for (const auto& e : g.edges()) EXPECT_LT(pos[e.from], pos[e.to]);
    }
}

TEST(TaskGraph, SpecRoundTripAndSubgraphs) {
    TaskGraph g(diamond_spec());
    EXPECT_EQ(TaskGraph(g.to_spec()), g);
    auto sub = g.without_edge(g.edge_id("s", "a"));
    EXPECT_EQ(sub.num_vertices(), 4u);
    EXPECT_EQ(sub.num_edges(), 3u);
    EXPECT_FALSE(sub.find_edge(sub.id("s"), sub.id("a")).has_value());
    std::vector<EdgeId> keep = {3, 0};
    auto two = g.with_edges(keep);
    ASSERT_EQ(two.num_edges(), 2u);
    EXPECT_EQ(two.name(two.edge(0).to), "a");  // input order kept
    EXPECT_EQ(two.name(two.edge(1).from), "b");
}

TEST(CheapestCosts, DiamondByHand) {
    TaskGraph g(diamond_spec());
    auto d = cheapest_costs(g);
    EXPECT_EQ(d[g.id("t")].value(), 0);
    EXPECT_EQ(d[g.id("a")].value(), 3);
    EXPECT_EQ(d[g.id("b")].value(), 1);
    EXPECT_EQ(d[g.id("s")].value(), 3);
    auto p = cheapest_path(g);
    EXPECT_EQ(p.total_cost(g), 3);
    EXPECT_EQ(g.name(p.vertices(g)[1]), "b");
    // Tie: with (a,t) at cost 2 both routes cost 3 and input order decides.
    auto tie = graph({"s", "a", "b", "t"}, {{"s", "a", "1"}, {"s", "b", "2"}, {"a", "t", "2"}, {"b", "t", "1"}});
    EXPECT_EQ(tie.name(cheapest_path(tie).vertices(tie)[1]), "a");
}

TEST(CheapestCosts, UnreachableIsInfinite) {
    auto g = graph({"s", "a", "b", "t"}, {{"s", "a", "1"}, {"b", "t", "1"}});
    EXPECT_TRUE(cheapest_cost(g, g.source()).is_infinite());
    EXPECT_TRUE(cheapest_cost(g, g.id("a")).is_infinite());
    EXPECT_EQ(cheapest_cost(g, g.id("b")).value(), 1);
    EXPECT_EQ(code_of([&] { cheapest_path(g); }), ErrorCode::NoPathToTarget);
    EXPECT_EQ(code_of([&] { minmax_path(g); }), ErrorCode::NoPathToTarget);
}

TEST(CheapestCosts, MatchPathEnumeration) {
    std::mt19937_64 rng(11);
    for (int round = 0; round < 200; ++round) {
        RandomGraphOptions opt;
        opt.vertices = 2 + round % 8;
        opt.max_edges = 14;
        opt.ensure_path = round % 5 != 0;
        auto g = random_task_graph(rng, opt);
        auto d = cheapest_costs(g);
        for (VertexId v = 0; v < g.num_vertices(); ++v) {
            EXPECT_TRUE(support::same(d[v], brute::distance(g, v)));
        }
        if (d[g.source()].is_finite()) {
            auto p = cheapest_path(g);
            EXPECT_EQ(p.total_cost(g), d[g.source()].value());
            EXPECT_EQ(p.vertices(g).front(), g.source());
            EXPECT_EQ(p.vertices(g).back(), g.target());
        }
    }
}

TEST(CheapestCosts, ScaleLinearly) {
    std::mt19937_64 rng(12);
    for (int round = 0; round < 60; ++round) {
        auto g = random_task_graph(rng, {});
        Rational factor = ratio(1 + round % 5, 1 + round % 3);
        auto d = cheapest_costs(g);
        auto ds = cheapest_costs(g.scaled(factor));
        for (VertexId v = 0; v < g.num_vertices(); ++v) {
            if (d[v].is_infinite()) {
                EXPECT_TRUE(ds[v].is_infinite());
            } else {
                EXPECT_EQ(ds[v].value(), d[v].value() * factor);
            }
        }
    }
}

TEST(MinmaxPath, AchievesBestBottleneck) {
    std::mt19937_64 rng(13);
    for (int round = 0; round < 200; ++round) {
        RandomGraphOptions opt;
        opt.vertices = 2 + round % 8;
        opt.max_edges = 14;
        auto g = random_task_graph(rng, opt);
        auto p = minmax_path(g);
        auto vs = p.vertices(g);
        EXPECT_EQ(vs.front(), g.source());
        EXPECT_EQ(vs.back(), g.target());
        EXPECT_EQ(p.bottleneck(g), *brute::best_bottleneck(g));
    }
}

TEST(MaxPathSum, CountsEnteredVertices) {
    auto g = graph({"s", "a", "b", "t"}, {{"s", "a", "0"}, {"s", "b", "0"}, {"a", "t", "0"}, {"b", "t", "0"}});
    std::map<std::string, Rational> w = {{"s", 100}, {"a", 2}, {"b", 5}, {"t", 1}};
    EXPECT_EQ(max_path_sum(g, w, g.source()).value(), 6);
    EXPECT_EQ(max_path_sum(g, w, g.id("a")).value(), 1);
    EXPECT_EQ(max_path_sum(g, w, g.target()).value(), 0);
    auto dead = graph({"s", "a", "t"}, {{"s", "t", "1"}});
    EXPECT_EQ(code_of([&] { max_path_sum(dead, std::vector<Rational>(3), dead.id("a")); }),
              ErrorCode::NoPathToTarget);
}
