#pragma once

#include <string>
#include <vector>

#include "pdptw/pdptw.hpp"

namespace pdptw::test {

struct T1Options {
    int capacity = 10;
    int vehicles = 1;
    double p1_open = 0;
    double c1_close = 100;
};

/// depot (0,0); supplier P1 (0,3) q=+5; customer C1 (4,3) q=-5; unit speed and cost.
inline Instance t1(T1Options o = {}) {
    std::vector<Node> nodes{
        {0, 0, 0, 0, 0, 1000, 0},
        {1, 0, 3, 5, o.p1_open, 100, 0},
        {2, 4, 3, -5, 0, o.c1_close, 0},
    };
    return Instance(nodes, {{1, 2}}, Fleet::homogeneous(o.vehicles, o.capacity), "T1");
}

inline Solution t1_route(int vehicles = 1) {
    Solution s;
    s.routes.assign(static_cast<std::size_t>(vehicles), Route{0, 0});
    s.routes[0] = {0, 1, 2, 0};
    return s;
}

/// T1 plus a second couple P2 (6,0) q=+3 / C2 (6,4) q=-3, written in the Li & Lim layout.
inline const char* kTwoCoupleText =
    "2\t10\t1\n"
    "0\t0\t0\t0\t0\t1000\t0\t0\t0\n"
    "1\t0\t3\t5\t0\t100\t0\t0\t2\n"
    "2\t4\t3\t-5\t0\t100\t0\t1\t0\n"
    "3\t6\t0\t3\t10\t200\t5\t0\t4\n"
    "4\t6\t4\t-3\t20\t300\t5\t3\t0\n";

inline Instance with_fleet(const Instance& inst, Fleet f) {
    return Instance(inst.nodes(), inst.couples(), std::move(f), inst.name());
}

inline Weights unit_weights(double l1 = 0.5) { return {l1, 1.0 - l1, 1.0, 1.0}; }

} // namespace pdptw::test
