#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <vector>

#include "pdptw/errors.hpp"
#include "pdptw/instance.hpp"
#include "pdptw/pareto.hpp"
#include "pdptw/schedule.hpp"

namespace pdptw {

struct OracleLimits {
    std::size_t max_couples = 5;
    int max_vehicles = 3;
};

struct OracleResult {
    std::vector<ArchiveEntry> front;
    std::size_t enumerated = 0;
};

namespace detail {

// All orders of the given couples with each pickup before its delivery and the load within
// [0, capacity] throughout.
inline void interleavings(const Instance& inst, const std::vector<int>& couple_ids, int capacity,
                          std::vector<Route>& out) {
    const std::size_t m = couple_ids.size();
    std::vector<int> state(m, 0);  // 0 pending, 1 on board, 2 delivered
    Route seq{kDepot};
    std::function<void(int)> rec = [&](int load) {
        if (seq.size() == 2 * m + 1) {
            Route r = seq;
            r.push_back(kDepot);
            out.push_back(std::move(r));
            return;
        }
        for (std::size_t i = 0; i < m; ++i) {
            const Couple& c = inst.couples()[static_cast<std::size_t>(couple_ids[i])];
            if (state[i] == 2) continue;
            const NodeId next = state[i] == 0 ? c.pickup : c.delivery;
            const int nl = load + inst.node(next).q;
            if (nl > capacity || nl < 0) continue;
            ++state[i];
            seq.push_back(next);
            rec(nl);
            seq.pop_back();
            --state[i];
        }
    };
    rec(0);
}

} // namespace detail

/// Visits every hard-feasible solution: every assignment of couples to vehicles (empty routes
/// allowed) times every capacity-feasible pickup-before-delivery order on each vehicle.
/// Time windows never prune. Returns the number of solutions visited.
inline std::size_t for_each_solution(const Instance& inst, const std::function<void(const Solution&)>& visit,
                                     OracleLimits limits = {}) {
    const std::size_t c = inst.couples().size();
    const int k = inst.vehicles();
    if (c > limits.max_couples || k > limits.max_vehicles)
        throw GuardError("exhaustive enumeration limited to " + std::to_string(limits.max_couples) + " couples and " +
                         std::to_string(limits.max_vehicles) + " vehicles");

    std::size_t count = 0;
    std::vector<int> assign(c, 0);
    while (true) {
        std::vector<std::vector<Route>> options(static_cast<std::size_t>(k));
        bool any_empty = false;
        for (int v = 0; v < k; ++v) {
            std::vector<int> mine;
            for (std::size_t i = 0; i < c; ++i)
                if (assign[i] == v) mine.push_back(static_cast<int>(i));
            detail::interleavings(inst, mine, inst.fleet().capacity[static_cast<std::size_t>(v)],
                                  options[static_cast<std::size_t>(v)]);
            if (options[static_cast<std::size_t>(v)].empty()) any_empty = true;
        }
        if (!any_empty) {
            std::vector<std::size_t> pick(static_cast<std::size_t>(k), 0);
            Solution sol;
            sol.routes.resize(static_cast<std::size_t>(k));
            while (true) {
                for (std::size_t v = 0; v < pick.size(); ++v) sol.routes[v] = options[v][pick[v]];
                visit(sol);
                ++count;
                std::size_t v = 0;
                for (; v < pick.size(); ++v) {
                    if (++pick[v] < options[v].size()) break;
                    pick[v] = 0;
                }
                if (v == pick.size()) break;
            }
        }
        // next assignment, odometer order
        std::size_t i = 0;
        for (; i < c; ++i) {
            if (++assign[i] < k) break;
            assign[i] = 0;
        }
        if (i == c) return count;
    }
}

inline std::vector<Solution> enumerate_solutions(const Instance& inst, OracleLimits limits = {}) {
    std::vector<Solution> out;
    for_each_solution(inst, [&](const Solution& s) { out.push_back(s); }, limits);
    return out;
}

/// Exact Pareto front over the full enumeration. The first-enumerated solution represents
/// each front point.
inline OracleResult exact_front(const Instance& inst, OracleLimits limits = {}) {
    ParetoArchive archive(std::nullopt);
    OracleResult res;
    res.enumerated = for_each_solution(inst, [&](const Solution& s) { archive.insert(evaluate(inst, s), s); }, limits);
    res.front = archive.sorted();
    return res;
}

} // namespace pdptw
