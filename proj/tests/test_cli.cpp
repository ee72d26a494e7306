#include <gtest/gtest.h>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "fixtures.hpp"
#include "pdptw/cli.hpp"

using namespace pdptw;
namespace fs = std::filesystem;

namespace {

struct CliRun {
    int code;
    std::string out;
    std::string err;
};

CliRun cli(const std::vector<std::string>& args) {
    std::ostringstream out;
    std::ostringstream err;
    const int code = run_cli(args, out, err);
    return {code, out.str(), err.str()};
}

class CliTest : public ::testing::Test {
protected:
    void SetUp() override {
        dir_ = fs::temp_directory_path() / ("pdptw_cli_" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()) +
                                            "_" + ::testing::UnitTest::GetInstance()->current_test_info()->name());
        fs::create_directories(dir_);
    }
    void TearDown() override { fs::remove_all(dir_); }

    std::string write(const std::string& name, const std::string& text) const {
        const fs::path p = dir_ / name;
        std::ofstream(p) << text;
        return p.string();
    }

    fs::path dir_;
};

const std::string kLrc101 = std::string(PDPTW_DATA_DIR) + "/lrc1/lrc101.txt";

} // namespace

TEST_F(CliTest, StaticOnLrc101) {
    const CliRun r = cli({"--instance", kLrc101, "--mode", "static", "--seed", "7", "--gens", "50"});
    ASSERT_EQ(r.code, 0) << r.err;
    const Json j = Json::parse(r.out);
    const RunReport rep = report_from_json(j);
    EXPECT_EQ(rep.instance, "LRC101");
    EXPECT_EQ(rep.seed, 7u);
    EXPECT_EQ(rep.config.generations, 50);
    EXPECT_GE(rep.n_sol(), 1u);
    EXPECT_EQ(j.at("N_sol").get<std::size_t>(), rep.rows.size());
    const Instance inst = parse_lilim(detail::read_file(kLrc101));
    for (const auto& row : rep.rows) EXPECT_EQ(hard_violation_count(feasibility_report(inst, row.solution)), 0u);
    EXPECT_FALSE(j.contains("wall_time_s"));
}

TEST_F(CliTest, DynamicM2WithEventFile) {
    const std::string inst = write("t1.txt", serialize_lilim(test::t1({.vehicles = 2})));
    const std::string events = write("e.csv",
                                     "t_d,px,py,pq,pe,pl,ps,dx,dy,dq,de,dl,ds\n"
                                     "5,2,2,2,0,1000,0,5,1,-2,0,1000,0\n");
    const CliRun r = cli({"--instance", inst, "--mode", "dynamic-m2", "--events", events, "--pop", "8", "--gens", "10"});
    ASSERT_EQ(r.code, 0) << r.err;
    const RunReport rep = report_from_json(Json::parse(r.out));
    EXPECT_EQ(rep.method, "m2");
    ASSERT_EQ(rep.events.size(), 1u);
    EXPECT_TRUE(rep.events[0].served);
    EXPECT_EQ(rep.events[0].couple, (Couple{3, 4}));
    auto committed = rep.events[0].committed;
    std::sort(committed.begin(), committed.end());
    EXPECT_EQ(committed, (std::vector<Route>{{0}, {0, 1}}));
}

TEST_F(CliTest, DerivedEventsAndOracle) {
    const std::string inst = write("syn.txt", serialize_lilim(generate_synthetic(4, 0.3, 3, {.vehicles = 2})));
    const CliRun r = cli({"--instance", inst, "--mode", "dynamic-m1", "--derive-events", "0.25", "0.2", "--pop", "8",
                          "--gens", "10", "--oracle", "--timing"});
    ASSERT_EQ(r.code, 0) << r.err;
    const Json j = Json::parse(r.out);
    EXPECT_EQ(j.at("events").size(), 1u);
    EXPECT_TRUE(j.contains("oracle_front"));
    EXPECT_TRUE(j.contains("wall_time_s"));
}

TEST_F(CliTest, ByteIdenticalForSameSeed) {
    const std::vector<std::string> args{"--instance", kLrc101, "--gens", "5", "--pop", "10", "--seed", "3"};
    const CliRun a = cli(args);
    const CliRun b = cli(args);
    ASSERT_EQ(a.code, 0);
    EXPECT_EQ(a.out, b.out);
    auto other = args;
    other.back() = "4";
    EXPECT_NE(cli(other).out, a.out);
}

TEST_F(CliTest, OutputFormats) {
    const std::string base = (dir_ / "rep").string();
    ASSERT_EQ(cli({"--instance", kLrc101, "--gens", "2", "--pop", "6", "--format", "both", "--out", base}).code, 0);
    ASSERT_TRUE(fs::exists(base + ".json"));
    ASSERT_TRUE(fs::exists(base + ".csv"));
    const std::string csv = detail::read_file(base + ".csv");
    EXPECT_EQ(csv.rfind("instance,method,N_sol,N_k,f1,f2,F,seed\nLRC101,static,", 0), 0u);

    const CliRun c = cli({"--instance", kLrc101, "--gens", "2", "--pop", "6", "--format", "csv"});
    EXPECT_EQ(c.out, csv);
}

TEST_F(CliTest, InstanceDirectory) {
    write("b.txt", serialize_lilim(generate_synthetic(2, 0.5, 2)));
    write("a.txt", serialize_lilim(generate_synthetic(2, 0.5, 1)));
    write("notes.md", "ignored\n");
    const CliRun r = cli({"--instance-dir", dir_.string(), "--gens", "3", "--pop", "6", "--seed", "10"});
    ASSERT_EQ(r.code, 0) << r.err;
    const Json j = Json::parse(r.out);
    ASSERT_EQ(j.at("reports").size(), 2u);
    EXPECT_EQ(j["reports"][0]["instance"], "A");
    EXPECT_EQ(j["reports"][0]["seed"], 10);
    EXPECT_EQ(j["reports"][1]["instance"], "B");
    EXPECT_EQ(j["reports"][1]["seed"], 11);
}

TEST_F(CliTest, ConfigFileAndOverrides) {
    const std::string cfg = write("ga.cfg", "population_size = 6\ngenerations = 4\nlambda1 = 0.8\nlambda2 = 0.2\n");
    const CliRun r = cli({"--instance", kLrc101, "--config", cfg, "--gens", "2"});
    ASSERT_EQ(r.code, 0) << r.err;
    const RunReport rep = report_from_json(Json::parse(r.out));
    EXPECT_EQ(rep.config.population_size, 6);
    EXPECT_EQ(rep.config.generations, 2);
    EXPECT_EQ(rep.config.lambda1, 0.8);

    const CliRun one = cli({"--instance", kLrc101, "--pop", "4", "--gens", "1", "--lambda1", "0.3"});
    ASSERT_EQ(one.code, 0) << one.err;
    EXPECT_EQ(report_from_json(Json::parse(one.out)).config.lambda2, 0.7);
}

TEST_F(CliTest, Errors) {
    EXPECT_EQ(cli({"--instance", kLrc101, "--bogus"}).code, 2);
    EXPECT_EQ(cli({}).code, 2);
    EXPECT_EQ(cli({"--instance", kLrc101, "--mode", "sideways"}).code, 2);
    EXPECT_EQ(cli({"--instance", kLrc101, "--instance-dir", dir_.string()}).code, 2);

    const CliRun missing = cli({"--instance", (dir_ / "nope.txt").string()});
    EXPECT_NE(missing.code, 0);
    EXPECT_NE(missing.err.find("cannot open"), std::string::npos);

    const std::string bad = write("bad.txt", "1 10 1\n0 0 0 0 0 100 0 0 0\n1 0 3 5 0 100 0 0 7\n");
    const CliRun parse = cli({"--instance", bad});
    EXPECT_NE(parse.code, 0);
    EXPECT_NE(parse.err.find("line 3"), std::string::npos) << parse.err;

    EXPECT_NE(cli({"--instance", kLrc101, "--pop", "1"}).code, 0);
    EXPECT_NE(cli({"--instance", kLrc101, "--mode", "dynamic-m1"}).code, 0);
    const std::string cfg = write("bad.cfg", "mutation_rate = 2\n");
    EXPECT_NE(cli({"--instance", kLrc101, "--config", cfg}).code, 0);
    EXPECT_EQ(cli({"--help"}).code, 0);
}
