#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <utility>

#include "pdptw/errors.hpp"
#include "pdptw/instance.hpp"

namespace pdptw {

struct BoundsReport {
    double f1b = 0.0;      ///< travel-cost lower bound
    double f2b_raw = 0.0;  ///< tardiness lower bound before clamping
    double f2b = 0.0;      ///< max(f2b_raw, tardiness_floor)
    double c1 = 0.0;
    double c2 = 0.0;

    bool operator==(const BoundsReport&) const = default;
};

inline constexpr double kTardinessFloor = 1.0;

/// C_min * d_min * (arcs every solution must traverse).
///
/// Each distinct non-depot location has to be entered at least once over a positive-length
/// arc, and some vehicle has to come back to the depot, so with pairwise-distinct locations
/// the arc count is N' + 1. Co-located nodes share an entry arc and are counted once.
inline double travel_cost_lower_bound(const Instance& inst) {
    if (inst.couples().empty()) throw BoundError("travel-cost bound undefined without couples");
    const auto n = static_cast<NodeId>(inst.node_count());
    double d_min = std::numeric_limits<double>::infinity();
    for (NodeId i = 0; i < n; ++i)
        for (NodeId j = i + 1; j < n; ++j) {
            const double d = inst.distance(i, j);
            if (d > 0) d_min = std::min(d_min, d);
        }
    if (!std::isfinite(d_min)) throw BoundError("travel-cost bound undefined: all nodes share one location");

    const Node& depot = inst.node(kDepot);
    std::set<std::pair<double, double>> locations;
    for (NodeId i = 1; i < n; ++i) {
        const Node& v = inst.node(i);
        if (v.x == depot.x && v.y == depot.y) continue;
        locations.emplace(v.x, v.y);
    }
    const auto arcs = locations.empty() ? 0.0 : static_cast<double>(locations.size() + 1);
    const double c_min = *std::min_element(inst.fleet().unit_cost.begin(), inst.fleet().unit_cost.end());
    return c_min * d_min * arcs;
}

/// Sum of unavoidable lateness when every couple gets its own fastest vehicle
/// straight from the depot. Not clamped.
inline double raw_tardiness_lower_bound(const Instance& inst) {
    if (inst.couples().empty()) throw BoundError("tardiness bound undefined without couples");
    const double v_max = *std::max_element(inst.fleet().speed.begin(), inst.fleet().speed.end());
    double raw = 0.0;
    for (const auto& [p, d] : inst.couples()) {
        const Node& pn = inst.node(p);
        const Node& dn = inst.node(d);
        const double dep_p = std::max(pn.e, inst.distance(kDepot, p) / v_max) + pn.s;
        const double dep_d = std::max(dn.e, dep_p + inst.distance(p, d) / v_max) + dn.s;
        raw += std::max(0.0, dep_p - pn.l) + std::max(0.0, dep_d - dn.l);
    }
    return raw;
}

inline double tardiness_lower_bound(const Instance& inst) {
    return std::max(raw_tardiness_lower_bound(inst), kTardinessFloor);
}

inline std::pair<double, double> scaling_coefficients(double f1b, double f2b) {
    if (!(f1b > 0) || !(f2b > 0)) throw ContractViolation("scaling coefficients need positive bounds");
    return {1.0 / f1b, 1.0 / f2b};
}

inline BoundsReport compute_bounds(const Instance& inst) {
    BoundsReport b;
    b.f1b = travel_cost_lower_bound(inst);
    b.f2b_raw = raw_tardiness_lower_bound(inst);
    b.f2b = std::max(b.f2b_raw, kTardinessFloor);
    std::tie(b.c1, b.c2) = scaling_coefficients(b.f1b, b.f2b);
    return b;
}

} // namespace pdptw
