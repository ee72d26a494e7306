#include <gtest/gtest.h>

#include <limits>

#include "fixtures.hpp"

using namespace pdptw;

TEST(TravelCostLowerBound, Examples) {
    const Instance t1 = test::t1();
    EXPECT_DOUBLE_EQ(travel_cost_lower_bound(t1), 9.0);
    EXPECT_LE(travel_cost_lower_bound(t1), total_travel_cost(t1, test::t1_route()));

    Fleet f = t1.fleet();
    f.unit_cost = {2.0};
    EXPECT_DOUBLE_EQ(travel_cost_lower_bound(test::with_fleet(t1, f)), 18.0);

    std::vector<Node> nodes{{0, 0, 0, 0, 0, 100, 0}, {1, 1, 0, 1, 0, 100, 0}, {2, 0, 5, -1, 0, 100, 0}};
    EXPECT_DOUBLE_EQ(travel_cost_lower_bound(Instance(nodes, {{1, 2}}, Fleet::homogeneous(1, 5))), 3.0);
}

TEST(TravelCostLowerBound, Errors) {
    std::vector<Node> depot{{0, 0, 0, 0, 0, 100, 0}};
    EXPECT_THROW(travel_cost_lower_bound(Instance(depot, {}, Fleet::homogeneous(1, 5))), BoundError);
    EXPECT_THROW(tardiness_lower_bound(Instance(depot, {}, Fleet::homogeneous(1, 5))), BoundError);
    std::vector<Node> same{{0, 0, 0, 0, 0, 100, 0}, {1, 0, 0, 1, 0, 100, 0}, {2, 0, 0, -1, 0, 100, 0}};
    EXPECT_THROW(travel_cost_lower_bound(Instance(same, {{1, 2}}, Fleet::homogeneous(1, 5))), BoundError);
}

TEST(TravelCostLowerBound, CoLocatedNodesCountedOnce) {
    // pickup and delivery share a location: one entry arc plus the return arc
    std::vector<Node> nodes{{0, 0, 0, 0, 0, 100, 0}, {1, 3, 4, 1, 0, 100, 0}, {2, 3, 4, -1, 0, 100, 0}};
    const Instance inst(nodes, {{1, 2}}, Fleet::homogeneous(1, 5));
    EXPECT_DOUBLE_EQ(travel_cost_lower_bound(inst), 10.0);
    EXPECT_LE(travel_cost_lower_bound(inst), total_travel_cost(inst, Solution{{{0, 1, 2, 0}}}));
}

TEST(TardinessLowerBound, Examples) {
    EXPECT_EQ(raw_tardiness_lower_bound(test::t1()), 0.0);
    EXPECT_EQ(tardiness_lower_bound(test::t1()), kTardinessFloor);
    EXPECT_DOUBLE_EQ(raw_tardiness_lower_bound(test::t1({.c1_close = 5})), 2.0);
    EXPECT_DOUBLE_EQ(tardiness_lower_bound(test::t1({.c1_close = 5})), 2.0);

    auto nodes = test::t1({.c1_close = 5}).nodes();
    for (auto& n : nodes) {
        n.e = 0;
        n.l = std::numeric_limits<double>::infinity();
    }
    EXPECT_EQ(tardiness_lower_bound(Instance(nodes, {{1, 2}}, Fleet::homogeneous(1, 10))), kTardinessFloor);
}

TEST(ScalingCoefficients, Examples) {
    auto [a1, a2] = scaling_coefficients(9, 1);
    EXPECT_NEAR(a1, 1.0 / 9, 1e-15);
    EXPECT_EQ(a2, 1.0);
    EXPECT_EQ(scaling_coefficients(1, 1), std::make_pair(1.0, 1.0));
    EXPECT_EQ(scaling_coefficients(2, 4), std::make_pair(0.5, 0.25));
    EXPECT_THROW(scaling_coefficients(0, 1), ContractViolation);
    EXPECT_THROW(scaling_coefficients(1, -2), ContractViolation);
}

TEST(ComputeBounds, T1) {
    const BoundsReport b = compute_bounds(test::t1());
    EXPECT_EQ(b.f1b, 9.0);
    EXPECT_EQ(b.f2b_raw, 0.0);
    EXPECT_EQ(b.f2b, 1.0);
    EXPECT_EQ(b.c1, 1.0 / 9);
    EXPECT_EQ(b.c2, 1.0);
}

// Soundness against the exhaustive enumeration.
TEST(BoundsProperties, SoundOnEveryFeasibleSolution) {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const Instance inst = generate_synthetic(3, 0.05 + 0.05 * static_cast<double>(seed % 5), seed,
                                                 {.vehicles = 2, .capacity = 12});
        const BoundsReport b = compute_bounds(inst);
        EXPECT_EQ(b, compute_bounds(inst));
        std::size_t n = 0;
        for_each_solution(inst, [&](const Solution& s) {
            const ObjectiveVector o = evaluate(inst, s);
            EXPECT_LE(b.f1b, o.f1 + 1e-9) << "seed " << seed;
            EXPECT_LE(b.f2b_raw, o.f2 + 1e-9) << "seed " << seed;
            EXPECT_LE(b.f2b, o.f2 + kTardinessFloor + 1e-9) << "seed " << seed;
            EXPECT_GE(b.c1 * o.f1, 1.0 - 1e-12);
            ++n;
        });
        EXPECT_GT(n, 0u);
    }
}
