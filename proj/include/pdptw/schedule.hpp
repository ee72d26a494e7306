#pragma once

#include <algorithm>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "pdptw/errors.hpp"
#include "pdptw/instance.hpp"

namespace pdptw {

/// One route per vehicle; each route starts and ends at the depot.
struct Solution {
    std::vector<Route> routes;

    bool operator==(const Solution&) const = default;
    auto operator<=>(const Solution&) const = default;
};

/// Number of vehicles that leave the depot.
inline int used_vehicles(const Solution& sol) {
    return static_cast<int>(std::count_if(sol.routes.begin(), sol.routes.end(),
                                          [](const Route& r) { return r.size() > 2; }));
}

struct Visit {
    NodeId node = kDepot;
    double arrival = 0.0;
    double wait = 0.0;
    double departure = 0.0;
    int load = 0;  ///< load after service
};

struct RouteSchedule {
    std::vector<Visit> visits;
};

inline bool depot_bracketed(std::span<const NodeId> route) {
    return route.size() >= 2 && route.front() == kDepot && route.back() == kDepot;
}

/// Arrival, waiting, departure and load along `route` for vehicle `vehicle`.
/// The vehicle leaves the depot at time 0 empty; early arrivals wait for the window to open.
inline RouteSchedule propagate_schedule(const Instance& inst, int vehicle, std::span<const NodeId> route) {
    if (!depot_bracketed(route)) throw ContractViolation("route must begin and end at the depot");
    RouteSchedule out;
    out.visits.reserve(route.size());
    out.visits.push_back({route[0], 0.0, 0.0, 0.0, 0});
    for (std::size_t i = 1; i < route.size(); ++i) {
        const Visit& prev = out.visits.back();
        const Node& n = inst.node(route[i]);
        Visit v;
        v.node = route[i];
        v.arrival = prev.departure + inst.travel_time(vehicle, prev.node, v.node);
        v.wait = std::max(0.0, n.e - v.arrival);
        v.departure = std::max(v.arrival, n.e) + n.s;
        v.load = prev.load + n.q;
        out.visits.push_back(v);
    }
    return out;
}

/// Aggregates of one route, computed without materializing the schedule.
struct RouteEval {
    double cost = 0.0;
    double tardiness = 0.0;
    int max_load = 0;
    int min_load = 0;
};

inline RouteEval evaluate_route(const Instance& inst, int vehicle, std::span<const NodeId> route) {
    RouteEval ev;
    if (route.size() < 2) return ev;
    double length = 0.0;
    double t = 0.0;
    int load = 0;
    for (std::size_t i = 1; i < route.size(); ++i) {
        const NodeId from = route[i - 1];
        const NodeId to = route[i];
        const Node& n = inst.node(to);
        length += inst.distance(from, to);
        const double arrival = t + inst.travel_time(vehicle, from, to);
        t = std::max(arrival, n.e) + n.s;
        load += n.q;
        ev.max_load = std::max(ev.max_load, load);
        ev.min_load = std::min(ev.min_load, load);
        if (to != kDepot) ev.tardiness += std::max(0.0, t - n.l);
    }
    ev.cost = inst.fleet().unit_cost[static_cast<std::size_t>(vehicle)] * length;
    return ev;
}

struct ObjectiveVector {
    double f1 = 0.0;  ///< total travel cost
    double f2 = 0.0;  ///< total tardiness

    bool operator==(const ObjectiveVector&) const = default;
    auto operator<=>(const ObjectiveVector&) const = default;
};

struct Weights {
    double lambda1 = 0.5;
    double lambda2 = 0.5;
    double c1 = 1.0;
    double c2 = 1.0;
};

/// Sum over traversed arcs of C_k * d_ij, accumulated route by route.
inline double total_travel_cost(const Instance& inst, const Solution& sol) {
    double total = 0.0;
    for (std::size_t k = 0; k < sol.routes.size(); ++k)
        total += evaluate_route(inst, static_cast<int>(k), sol.routes[k]).cost;
    return total;
}

/// Sum over visited non-depot nodes of max(0, D_i - l_i).
inline double total_tardiness(const Instance& inst, const Solution& sol) {
    double total = 0.0;
    for (std::size_t k = 0; k < sol.routes.size(); ++k)
        total += evaluate_route(inst, static_cast<int>(k), sol.routes[k]).tardiness;
    return total;
}

inline ObjectiveVector evaluate(const Instance& inst, const Solution& sol) {
    ObjectiveVector obj;
    for (std::size_t k = 0; k < sol.routes.size(); ++k) {
        const RouteEval ev = evaluate_route(inst, static_cast<int>(k), sol.routes[k]);
        obj.f1 += ev.cost;
        obj.f2 += ev.tardiness;
    }
    return obj;
}

/// F = lambda1 * c1 * f1 + lambda2 * c2 * f2
inline double aggregate_fitness(const ObjectiveVector& obj, const Weights& w) {
    return w.lambda1 * w.c1 * obj.f1 + w.lambda2 * w.c2 * obj.f2;
}

enum class ViolationKind {
    RouteCount,
    DepotBracket,
    UnknownNode,
    DuplicateVisit,
    MissingVisit,
    CapacityExceeded,
    NegativeLoad,
    Precedence,
    CoupleSplit,
    LateDeparture,  // soft
};

inline const char* to_string(ViolationKind k) {
    switch (k) {
    case ViolationKind::RouteCount: return "route-count";
    case ViolationKind::DepotBracket: return "depot-bracket";
    case ViolationKind::UnknownNode: return "unknown-node";
    case ViolationKind::DuplicateVisit: return "duplicate-visit";
    case ViolationKind::MissingVisit: return "missing-visit";
    case ViolationKind::CapacityExceeded: return "capacity";
    case ViolationKind::NegativeLoad: return "negative-load";
    case ViolationKind::Precedence: return "precedence";
    case ViolationKind::CoupleSplit: return "couple-split";
    case ViolationKind::LateDeparture: return "late-departure";
    }
    return "unknown";
}

struct Violation {
    ViolationKind kind;
    int vehicle = -1;
    NodeId node = -1;
    std::string message;

    /// Time-window breaches are informational; everything else is hard.
    bool hard() const { return kind != ViolationKind::LateDeparture; }
};

inline std::vector<Violation> feasibility_report(const Instance& inst, const Solution& sol) {
    std::vector<Violation> out;
    auto add = [&](ViolationKind kind, int vehicle, NodeId node, std::string msg) {
        out.push_back({kind, vehicle, node, std::move(msg)});
    };
    const int n = static_cast<int>(inst.node_count());
    if (static_cast<int>(sol.routes.size()) != inst.vehicles())
        add(ViolationKind::RouteCount, -1, -1,
            "expected " + std::to_string(inst.vehicles()) + " routes, got " + std::to_string(sol.routes.size()));

    std::vector<int> route_of(inst.node_count(), -1);
    std::vector<int> pos_of(inst.node_count(), -1);
    std::vector<double> departure(inst.node_count(), 0.0);
    std::vector<int> count(inst.node_count(), 0);

    for (std::size_t k = 0; k < sol.routes.size(); ++k) {
        const Route& r = sol.routes[k];
        const int vk = static_cast<int>(k);
        bool well_formed = depot_bracketed(r);
        if (!well_formed) add(ViolationKind::DepotBracket, vk, -1, "route " + std::to_string(k) + " is not depot-bracketed");
        for (std::size_t i = 0; i < r.size(); ++i) {
            const NodeId id = r[i];
            if (id < 0 || id >= n) {
                add(ViolationKind::UnknownNode, vk, id, "unknown node " + std::to_string(id));
                well_formed = false;
                continue;
            }
            if (id == kDepot) {
                if (i != 0 && i + 1 != r.size()) {
                    add(ViolationKind::DepotBracket, vk, id, "depot visited inside route " + std::to_string(k));
                    well_formed = false;
                }
                continue;
            }
            ++count[static_cast<std::size_t>(id)];
            route_of[static_cast<std::size_t>(id)] = vk;
            pos_of[static_cast<std::size_t>(id)] = static_cast<int>(i);
        }
        if (!well_formed) continue;

        const RouteSchedule sched = propagate_schedule(inst, vk, r);
        const int cap = k < inst.fleet().capacity.size() ? inst.fleet().capacity[k] : 0;
        for (const Visit& v : sched.visits) {
            if (v.node == kDepot) continue;
            departure[static_cast<std::size_t>(v.node)] = v.departure;
            if (v.load > cap)
                add(ViolationKind::CapacityExceeded, vk, v.node,
                    "load " + std::to_string(v.load) + " exceeds capacity " + std::to_string(cap));
            if (v.load < 0) add(ViolationKind::NegativeLoad, vk, v.node, "negative load " + std::to_string(v.load));
            if (v.departure > inst.node(v.node).l)
                add(ViolationKind::LateDeparture, vk, v.node, "departs after window close");
        }
    }

    for (NodeId id = 1; id < n; ++id) {
        const int c = count[static_cast<std::size_t>(id)];
        if (c == 0) add(ViolationKind::MissingVisit, -1, id, "node " + std::to_string(id) + " is never visited");
        if (c > 1) add(ViolationKind::DuplicateVisit, -1, id, "node " + std::to_string(id) + " visited " + std::to_string(c) + " times");
    }

    for (const auto& [p, d] : inst.couples()) {
        const auto ps = static_cast<std::size_t>(p);
        const auto ds = static_cast<std::size_t>(d);
        if (count[ps] != 1 || count[ds] != 1) continue;
        if (route_of[ps] != route_of[ds]) {
            add(ViolationKind::CoupleSplit, route_of[ds], d,
                "couple (" + std::to_string(p) + "," + std::to_string(d) + ") split across vehicles");
            continue;
        }
        if (pos_of[ds] < pos_of[ps] || departure[ds] <= departure[ps])
            add(ViolationKind::Precedence, route_of[ds], d,
                "customer " + std::to_string(d) + " not served after supplier " + std::to_string(p));
    }
    return out;
}

inline std::size_t hard_violation_count(const std::vector<Violation>& vs) {
    return static_cast<std::size_t>(std::count_if(vs.begin(), vs.end(), [](const Violation& v) { return v.hard(); }));
}

inline bool hard_feasible(const Instance& inst, const Solution& sol) {
    return hard_violation_count(feasibility_report(inst, sol)) == 0;
}

} // namespace pdptw
