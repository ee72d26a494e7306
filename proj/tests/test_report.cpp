#include <gtest/gtest.h>

#include <sstream>

#include "fixtures.hpp"

using namespace pdptw;

namespace {

std::size_t event_error_line(const std::string& text) {
    std::istringstream in(text);
    try {
        parse_events_csv(in);
    } catch (const ParseError& e) {
        return e.line();
    }
    return 0;
}

} // namespace

TEST(SolutionJson, RoundTrip) {
    const Solution s{{{0, 1, 2, 0}, {0, 0}, {0, 3, 4, 0}}};
    const Json j = solution_to_json(s);
    EXPECT_EQ(j.dump(), R"({"0":[0,1,2,0],"1":[0,0],"2":[0,3,4,0]})");
    EXPECT_EQ(solution_from_json(j), s);
    EXPECT_THROW(solution_from_json(Json::parse(R"({"0":[0,0],"2":[0,0]})")), std::runtime_error);
}

TEST(EventsCsv, ParseAndRoundTrip) {
    std::istringstream in(
        "t_d,px,py,pq,pe,pl,ps,dx,dy,dq,de,dl,ds\n"
        "5, 2, 2, 3, 0, 100, 10, 5, 1, -3, 0, 200, 10\n"
        "\n"
        "12.5,1,1,1,0,50,0,2,2,-1,10,60,0\n");
    const auto evs = parse_events_csv(in);
    ASSERT_EQ(evs.size(), 2u);
    EXPECT_EQ(evs[0].t_d, 5);
    EXPECT_EQ(evs[0].pickup.q, 3);
    EXPECT_EQ(evs[0].delivery.l, 200);
    EXPECT_EQ(evs[1].t_d, 12.5);

    std::istringstream again(serialize_events_csv(evs));
    const auto back = parse_events_csv(again);
    ASSERT_EQ(back.size(), 2u);
    for (std::size_t i = 0; i < 2; ++i) {
        EXPECT_EQ(back[i].t_d, evs[i].t_d);
        EXPECT_EQ(back[i].pickup, evs[i].pickup);
        EXPECT_EQ(back[i].delivery, evs[i].delivery);
    }
}

TEST(EventsCsv, Errors) {
    EXPECT_EQ(event_error_line("5,2,2,3,0,100,10,5,1,-2,0,200,10\n"), 1u);
    EXPECT_EQ(event_error_line("5,2,2,3,0,100,10,5,1,-3,0,200\n"), 1u);
    EXPECT_EQ(event_error_line("t_d,px\n5,2,2,3,0,100,10,5,1,-3,0,200,10\n-1,2,2,3,0,100,10,5,1,-3,0,200,10\n"), 3u);
    EXPECT_EQ(event_error_line("5,2,2,3,0,100,10,5,1,-3,0,200,x\n"), 1u);
}

TEST(DeriveEvents, Examples) {
    const Instance inst = generate_synthetic(10, 0.5, 4);
    const DerivedScenario sc = derive_events(inst, 0.2, 0.3, 11);
    EXPECT_EQ(sc.instance.couples().size(), 8u);
    ASSERT_EQ(sc.events.size(), 2u);
    for (const auto& ev : sc.events) EXPECT_DOUBLE_EQ(ev.t_d, 0.3 * inst.horizon());
    for (std::size_t i = 0; i < 2; ++i) {
        const Couple& c = inst.couples()[static_cast<std::size_t>(sc.removed_couples[i])];
        EXPECT_EQ(sc.events[i].pickup.x, inst.node(c.pickup).x);
        EXPECT_EQ(sc.events[i].delivery.q, inst.node(c.delivery).q);
    }
    EXPECT_TRUE(validate_instance(sc.instance).empty());

    const DerivedScenario same = derive_events(inst, 0.2, 0.3, 11);
    EXPECT_EQ(same.removed_couples, sc.removed_couples);
    EXPECT_EQ(same.instance.nodes(), sc.instance.nodes());

    EXPECT_THROW(derive_events(generate_synthetic(2, 0.5, 4), 0.9, 0.3, 1), ContractViolation);
    EXPECT_THROW(derive_events(inst, 1.0, 0.3, 1), ContractViolation);
}

TEST(ReportCsv, Examples) {
    RunReport rep;
    rep.instance = "LRC101";
    rep.method = "m1";
    rep.seed = 7;
    rep.rows.push_back({25, 234467.71, 63.95, 53.66, {}});
    for (int i = 0; i < 4; ++i) rep.rows.push_back({3, 1.0 + i, 1.0, 1.0, {}});
    const std::string csv = report_to_csv(rep);
    EXPECT_EQ(csv.substr(0, csv.find('\n')), "instance,method,N_sol,N_k,f1,f2,F,seed");
    EXPECT_NE(csv.find("\nLRC101,m1,5,25,234467.71,63.95,53.66,7\n"), std::string::npos);

    RunReport empty;
    empty.instance = "X";
    EXPECT_EQ(report_to_csv(empty), "instance,method,N_sol,N_k,f1,f2,F,seed\n");
}

TEST(ReportJson, RoundTripIsIdentity) {
    const Instance inst = generate_synthetic(3, 0.3, 6, {.vehicles = 2});
    GaConfig cfg;
    cfg.population_size = 8;
    cfg.generations = 5;
    cfg.seed = 6;
    const DerivedScenario sc = derive_events(inst, 0.3, 0.2, 6);
    const DynamicResult d = run_dynamic(sc.instance, sc.events, cfg, InsertionMethod::Greedy);
    RunReport rep = make_report("SYN", "m1", cfg, d);
    rep.wall_time_s = 0.125;
    rep.oracle_front = std::vector<ObjectiveVector>{{1.5, 0}, {1, 2}};

    const Json j = report_to_json(rep);
    const RunReport back = report_from_json(Json::parse(j.dump()));
    EXPECT_EQ(report_to_json(back).dump(2), j.dump(2));
    EXPECT_EQ(back.n_sol(), d.archive.size());
    ASSERT_EQ(back.events.size(), 1u);
    EXPECT_EQ(back.events[0].committed, d.events[0].committed);
}

TEST(ReportProperties, RowsNonDominatedFeasibleAboveBounds) {
    GaConfig cfg;
    cfg.population_size = 12;
    cfg.generations = 8;
    for (std::uint64_t seed = 1; seed <= 3; ++seed) {
        cfg.seed = seed;
        const Instance inst = generate_synthetic(5, 0.15, seed, {.vehicles = 3});
        const StaticResult r = run_static(inst, cfg);
        const RunReport rep = make_report("S", "static", cfg, r.bounds, r.weights, r.archive);
        const RunReport back = report_from_json(Json::parse(report_to_json(rep).dump()));
        ASSERT_EQ(back.n_sol(), back.rows.size());
        for (const auto& row : back.rows) {
            EXPECT_EQ(hard_violation_count(feasibility_report(inst, row.solution)), 0u);
            const ObjectiveVector o = evaluate(inst, row.solution);
            EXPECT_EQ(o.f1, row.f1);
            EXPECT_EQ(o.f2, row.f2);
            EXPECT_GE(row.f1, back.bounds.f1b);
            EXPECT_GE(row.f2, back.bounds.f2b_raw);
            for (const auto& other : back.rows) EXPECT_FALSE(dominates({other.f1, other.f2}, o));
        }
        for (std::size_t i = 1; i < back.rows.size(); ++i) EXPECT_LE(back.rows[i - 1].f1, back.rows[i].f1);
        if (!back.rows.empty()) {
            EXPECT_EQ(*back.min_f1_row(), 0u);
            EXPECT_EQ(*back.min_f2_row(), back.rows.size() - 1);
        }
    }
}
