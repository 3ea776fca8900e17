#include <algorithm>
#include <random>

#include <gtest/gtest.h>

#include "brute.hpp"
#include "presbias/agent.hpp"
#include "presbias/gadgets.hpp"
#include "presbias/random.hpp"
#include "support.hpp"

using namespace presbias;
using support::graph;
using support::q;

namespace {

std::vector<brute::Walk> as_brute(const TaskGraph& g, const std::vector<AgentWalk>& ws) {
    std::vector<brute::Walk> out;
    for (const auto& w : ws) {
        brute::Walk b;
        b.vertices.push_back(g.source());
        for (EdgeId e : w.edges) b.vertices.push_back(g.edge(e).to);
        b.reached = w.outcome == Outcome::ReachedTarget;
        EXPECT_EQ(b.vertices.back(), w.last);
        out.push_back(b);
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<Rational> betas_with_zero() {
    auto grid = support::beta_grid();
    grid.insert(grid.begin(), Rational(0));
    return grid;
}

TaskGraph random_graph(std::mt19937_64& rng, int round) {
    RandomGraphOptions opt;
    opt.vertices = 2 + round % 8;
    opt.max_edges = 4 + round % 11;
    opt.ensure_path = round % 7 != 0;
    return random_task_graph(rng, opt);
}

} // namespace

TEST(BiasFactor, RejectsOutOfRange) {
    EXPECT_THROW(BiasFactor(q("-1/3")), Error);
    EXPECT_THROW(BiasFactor(q("4/3")), Error);
    EXPECT_NO_THROW(BiasFactor(Rational(0)));
    EXPECT_NO_THROW(BiasFactor(Rational(1)));
}

TEST(CarWash, ProcrastinatesAndQuitsOnDayFifty) {
    auto g = gen_carwash(60);
    BiasFactor beta(q("1/3"));
    EXPECT_FALSE(is_motivating(g, beta, 1));
    auto stops = abandonment_vertices(g, beta, 1);
    ASSERT_EQ(stops.size(), 1u);
    EXPECT_EQ(g.name(stops[0]), "v_50");
    auto walks = agent_walks(g, beta, 1);
    ASSERT_EQ(walks.size(), 1u);
    EXPECT_EQ(walks[0].outcome, Outcome::Abandoned);
    EXPECT_EQ(walks[0].edges.size(), 49u);
    // Perceived cost on day i is (i+1)/150.
    auto zeta = perceived_costs(g, beta);
    EXPECT_EQ(zeta[g.id("v_2")].value(), q("3/150"));
    EXPECT_EQ(zeta[g.id("v_49")].value(), q("50/150"));
    EXPECT_EQ(zeta[g.id("v_50")].value(), q("51/150"));
    EXPECT_EQ(zeta[g.id("v_60")].value(), q("6/5"));
}

TEST(CarWash, DeadlineOnDaySixteenMotivates) {
    auto g = gen_carwash(60);
    auto cut = g.without_edge(g.edge_id("v_16", "v_17"));
    BiasFactor beta(q("1/3"));
    EXPECT_TRUE(is_motivating(cut, beta, 1));
    auto walks = agent_walks(cut, beta, 1);
    ASSERT_EQ(walks.size(), 1u);
    EXPECT_EQ(walks[0].outcome, Outcome::ReachedTarget);
    EXPECT_EQ(cut.name(cut.edge(walks[0].edges.back()).from), "v_16");
}

TEST(CarWash, FixedGraphRewardThreshold) {
    auto g = gen_carwash(60);
    BiasFactor beta(q("1/3"));
    EXPECT_EQ(min_motivating_reward_fixed_graph(g, beta).value(), q("18/5"));
    EXPECT_TRUE(is_motivating(g, beta, q("18/5")));
    EXPECT_FALSE(is_motivating(g, beta, q("18/5") - q("1/1000")));
}

TEST(TwoPath, AgentTakesTheCheapRoute) {
    auto g = gen_twopath();
    BiasFactor beta(q("1/3"));
    auto walks = agent_walks(g, beta, 3);
    ASSERT_EQ(walks.size(), 1u);
    EXPECT_EQ(walks[0].outcome, Outcome::ReachedTarget);
    EXPECT_TRUE(is_motivating(g, beta, 3));
    EXPECT_FALSE(is_motivating(g, beta, q("299/100")));
}

TEST(PreferredEdges, TiesAndErrors) {
    auto g = graph({"s", "a", "b", "t", "x"},
                   {{"s", "a", "1"}, {"s", "b", "1"}, {"a", "t", "2"}, {"b", "t", "2"}, {"x", "t", "1"}, {"s", "x", "5"}});
    BiasFactor beta(q("1/2"));
    EXPECT_EQ(preferred_edges(g, beta, g.source()).size(), 2u);
    EXPECT_EQ(agent_walks(g, beta, 4).size(), 2u);
    EXPECT_THROW(preferred_edges(g, beta, g.target()), Error);
    auto dead = graph({"s", "a", "t"}, {{"s", "a", "0"}, {"s", "t", "1"}});
    try {
        preferred_edges(dead, beta, dead.id("a"));
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::NoOutgoingEdge);
    }
    auto stuck = graph({"s", "a", "b", "t"}, {{"s", "t", "1"}, {"a", "b", "0"}});
    try {
        preferred_edges(stuck, beta, stuck.id("a"));
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::UnreachableTarget);
    }
}

TEST(FullyMyopic, ZeroBetaStepsIntoDeadEnds) {
    auto g = graph({"s", "a", "t"}, {{"s", "a", "0"}, {"s", "t", "1"}});
    BiasFactor zero(Rational(0));
    EXPECT_EQ(perceived_cost(g, zero, g.source()).value(), 0);
    EXPECT_FALSE(is_motivating(g, zero, 100));
    EXPECT_TRUE(min_motivating_reward_fixed_graph(g, zero).is_infinite());
    auto free = graph({"s", "a", "t"}, {{"s", "a", "0"}, {"a", "t", "0"}});
    EXPECT_TRUE(is_motivating(free, zero, 0));
    EXPECT_EQ(min_motivating_reward_fixed_graph(free, zero).value(), 0);
    auto paid = graph({"s", "t"}, {{"s", "t", "1"}});
    EXPECT_FALSE(is_motivating(paid, zero, 1000));
    EXPECT_THROW(min_motivating_reward_fixed_graph(paid, zero), Error);
}

TEST(Agent, NegativeRewardRejected) {
    auto g = gen_twopath();
    EXPECT_THROW(is_motivating(g, BiasFactor(q("1/2")), -1), Error);
}

TEST(Agent, WalkCapIsEnforced) {
    // Three layers of two parallel zero-cost routes: 8 walks.
    auto g = graph({"s", "a1", "b1", "m1", "a2", "b2", "m2", "a3", "b3", "t"},
                   {{"s", "a1", "0"}, {"s", "b1", "0"}, {"a1", "m1", "0"}, {"b1", "m1", "0"},
                    {"m1", "a2", "0"}, {"m1", "b2", "0"}, {"a2", "m2", "0"}, {"b2", "m2", "0"},
                    {"m2", "a3", "0"}, {"m2", "b3", "0"}, {"a3", "t", "0"}, {"b3", "t", "0"}},
                   "s", "t");
    BiasFactor beta(q("1/2"));
    EXPECT_EQ(agent_walks(g, beta, 0, 8).size(), 8u);
    try {
        agent_walks(g, beta, 0, 7);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::WalkExplosion);
    }
}

TEST(AgentProperty, PerceivedCostsMatchEnumeration) {
    std::mt19937_64 rng(21);
    for (int round = 0; round < 150; ++round) {
        auto g = random_graph(rng, round);
        for (const auto& b : betas_with_zero()) {
            auto zeta = perceived_costs(g, BiasFactor(b));
            for (VertexId v = 0; v < g.num_vertices(); ++v) {
                auto ref = brute::choose_single(g, b, v);
                ASSERT_TRUE(support::same(zeta[v], ref.zeta)) << "round " << round << " v " << v;
                if (ref.zeta) {
                    auto lib = preferred_edges(g, BiasFactor(b), v);
                    EXPECT_EQ(lib, ref.preferred);
                }
            }
        }
    }
}

TEST(AgentProperty, WalksAndCheckerMatchSimulation) {
    std::mt19937_64 rng(22);
    const std::vector<Rational> rewards = {0, q("1/2"), 1, 2, 3, 5, 9};
    for (int round = 0; round < 150; ++round) {
        auto g = random_graph(rng, round);
        for (const auto& b : betas_with_zero()) {
            BiasFactor beta(b);
            for (const auto& r : rewards) {
                auto ref = brute::walks(g, b, r);
                EXPECT_EQ(as_brute(g, agent_walks(g, beta, r)), ref);
                EXPECT_EQ(is_motivating(g, beta, r), brute::all_reach(ref));
            }
        }
    }
}

TEST(AgentProperty, MinimumRewardIsTight) {
    std::mt19937_64 rng(23);
    for (int round = 0; round < 150; ++round) {
        auto g = random_graph(rng, round);
        for (const auto& b : support::beta_grid()) {
            BiasFactor beta(b);
            auto lib = min_motivating_reward_fixed_graph(g, beta);
            auto ref = brute::min_reward_fixed(g, b);
            ASSERT_TRUE(support::same(lib, ref));
            if (!ref) {
                EXPECT_FALSE(is_motivating(g, beta, 1000));
                continue;
            }
            EXPECT_TRUE(is_motivating(g, beta, *ref));
            EXPECT_TRUE(is_motivating(g, beta, *ref + 1));
            if (*ref > 0) {
                EXPECT_FALSE(is_motivating(g, beta, *ref - q("1/1000")));
            }
        }
    }
}

TEST(AgentProperty, RationalAgentNeedsOnlyTheCheapestCost) {
    std::mt19937_64 rng(24);
    BiasFactor one(Rational(1));
    for (int round = 0; round < 100; ++round) {
        auto g = random_graph(rng, round);
        auto d = cheapest_cost(g, g.source());
        if (d.is_infinite()) continue;
        EXPECT_TRUE(is_motivating(g, one, d.value()));
        EXPECT_EQ(min_motivating_reward_fixed_graph(g, one), d);
        if (d.value() > 0) {
            EXPECT_FALSE(is_motivating(g, one, d.value() - q("1/100")));
        }
    }
}

TEST(AgentProperty, ScalingCostsAndRewardTogether) {
    std::mt19937_64 rng(25);
    for (int round = 0; round < 100; ++round) {
        auto g = random_graph(rng, round);
        Rational factor = ratio(1 + round % 4, 1 + round % 3);
        auto big = g.scaled(factor);
        for (const auto& b : support::beta_grid()) {
            BiasFactor beta(b);
            for (Rational r : {Rational(1), Rational(3)}) {
                EXPECT_EQ(is_motivating(g, beta, r), is_motivating(big, beta, r * factor));
            }
        }
    }
}
