#include <gtest/gtest.h>

#include <algorithm>

#include "fixtures.hpp"

using namespace pdptw;

namespace {

// Two couples on a line: A at x=1 -> 2 and B at x=10 -> 11, one vehicle, B's customer due at 15.
Instance line_instance() {
    std::vector<Node> nodes{
        {0, 0, 0, 0, 0, 1000, 0},  {1, 1, 0, 1, 0, 1000, 5},  {2, 2, 0, -1, 0, 1000, 5},
        {3, 10, 0, 1, 0, 1000, 0}, {4, 11, 0, -1, 0, 15, 0},
    };
    return Instance(nodes, {{1, 2}, {3, 4}}, Fleet::homogeneous(1, 100));
}

} // namespace

TEST(EnumerateSolutions, Examples) {
    const auto t1 = enumerate_solutions(test::t1());
    ASSERT_EQ(t1.size(), 1u);
    EXPECT_EQ(t1[0], test::t1_route());

    const Instance two = test::with_fleet(parse_lilim(std::string(test::kTwoCoupleText)), Fleet::homogeneous(1, 1000));
    const auto six = enumerate_solutions(two);
    EXPECT_EQ(six.size(), 6u);
    for (const auto& s : six) EXPECT_EQ(hard_violation_count(feasibility_report(two, s)), 0u);

    const auto sym = enumerate_solutions(test::t1({.vehicles = 2}));
    ASSERT_EQ(sym.size(), 2u);
    EXPECT_NE(sym[0], sym[1]);
}

TEST(EnumerateSolutions, CapacityPrunes) {
    // Q=7 forbids carrying both couples (5 + 3) at once
    const Instance two = test::with_fleet(parse_lilim(std::string(test::kTwoCoupleText)), Fleet::homogeneous(1, 7));
    EXPECT_EQ(enumerate_solutions(two).size(), 2u);
}

TEST(EnumerateSolutions, Guard) {
    EXPECT_THROW(enumerate_solutions(generate_synthetic(6, 0.5, 1)), GuardError);
    EXPECT_THROW(enumerate_solutions(generate_synthetic(2, 0.5, 1, {.vehicles = 4})), GuardError);
    EXPECT_NO_THROW(enumerate_solutions(generate_synthetic(2, 0.5, 1, {.vehicles = 4}), {5, 4}));
}

TEST(ExactFront, Examples) {
    const OracleResult t1 = exact_front(test::t1());
    ASSERT_EQ(t1.front.size(), 1u);
    EXPECT_EQ(t1.front[0].obj, (ObjectiveVector{12, 0}));
    EXPECT_EQ(t1.enumerated, 1u);

    // cheapest order PA CA PB CB is late at CB by 6; PA PB CB CA costs the same and is late by 1;
    // PB CB PA CA costs 24 and is on time
    const OracleResult line = exact_front(line_instance());
    EXPECT_EQ(line.enumerated, 6u);
    ASSERT_EQ(line.front.size(), 2u);
    EXPECT_EQ(line.front[0].obj, (ObjectiveVector{22, 1}));
    EXPECT_EQ(line.front[0].solution.routes[0], (Route{0, 1, 3, 4, 2, 0}));
    EXPECT_EQ(line.front[1].obj, (ObjectiveVector{24, 0}));
    EXPECT_EQ(line.front[1].solution.routes[0], (Route{0, 3, 4, 1, 2, 0}));
}

TEST(OracleProperties, FrontEqualsExtractFrontOfEnumeration) {
    for (std::uint64_t seed = 0; seed < 15; ++seed) {
        const Instance inst = generate_synthetic(3, 0.1, seed, {.vehicles = 2, .capacity = 15});
        const auto sols = enumerate_solutions(inst);
        std::vector<ObjectiveVector> objs;
        for (const auto& s : sols) objs.push_back(evaluate(inst, s));
        auto want = extract_front(objs);
        std::sort(want.begin(), want.end());

        const OracleResult res = exact_front(inst);
        EXPECT_EQ(res.enumerated, sols.size());
        std::vector<ObjectiveVector> got;
        for (const auto& e : res.front) {
            got.push_back(e.obj);
            EXPECT_EQ(evaluate(inst, e.solution), e.obj);
            EXPECT_EQ(hard_violation_count(feasibility_report(inst, e.solution)), 0u);
            for (const auto& o : objs) EXPECT_FALSE(dominates(o, e.obj));
        }
        EXPECT_EQ(got, want);

        // every enumerated solution is distinct
        auto sorted = sols;
        std::sort(sorted.begin(), sorted.end());
        EXPECT_EQ(std::adjacent_find(sorted.begin(), sorted.end()), sorted.end());
    }
}
