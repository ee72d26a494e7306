#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "pdptw/bounds.hpp"
#include "pdptw/chromosome.hpp"
#include "pdptw/config.hpp"
#include "pdptw/errors.hpp"
#include "pdptw/evolution.hpp"
#include "pdptw/instance.hpp"
#include "pdptw/pareto.hpp"
#include "pdptw/schedule.hpp"

namespace pdptw {

/// A couple that appears at time t_d. Node ids are assigned when the event is applied.
struct DynamicEvent {
    double t_d = 0.0;
    Node pickup;
    Node delivery;
};

/// Appends the event's couple to `inst` as ids N and N+1.
inline Instance extend_instance(const Instance& inst, const DynamicEvent& ev) {
    if (ev.t_d < 0) throw ContractViolation("event time must be non-negative");
    if (ev.pickup.q <= 0 || ev.delivery.q != -ev.pickup.q) throw ContractViolation("event couple quantities must balance");
    std::vector<Node> nodes = inst.nodes();
    std::vector<Couple> couples = inst.couples();
    Node p = ev.pickup;
    Node d = ev.delivery;
    p.id = static_cast<NodeId>(nodes.size());
    d.id = p.id + 1;
    nodes.push_back(p);
    nodes.push_back(d);
    couples.push_back({p.id, d.id});
    return Instance(std::move(nodes), std::move(couples), inst.fleet(), inst.name());
}

/// Committed heads of the routes of `base` at some event time.
struct FrozenPlan {
    Solution base;
    std::vector<std::size_t> frozen_len;  ///< entries of each route that are committed, start depot included
    std::vector<NodeId> release_node;
    std::vector<double> release_time;

    std::vector<Route> prefixes() const {
        std::vector<Route> out;
        out.reserve(base.routes.size());
        for (std::size_t k = 0; k < base.routes.size(); ++k)
            out.emplace_back(base.routes[k].begin(), base.routes[k].begin() + static_cast<std::ptrdiff_t>(frozen_len[k]));
        return out;
    }
};

/// Per route, the longest prefix of visits whose departure time is <= t_d. The start depot is
/// always committed; the closing depot never is, so a vehicle can be extended after its last visit.
inline FrozenPlan freeze_prefix(const Instance& inst, const Solution& sol, double t_d) {
    FrozenPlan fp;
    fp.base = sol;
    for (std::size_t k = 0; k < sol.routes.size(); ++k) {
        const RouteSchedule sched = propagate_schedule(inst, static_cast<int>(k), sol.routes[k]);
        std::size_t len = 1;
        while (len + 1 < sched.visits.size() && sched.visits[len].departure <= t_d) ++len;
        fp.frozen_len.push_back(len);
        fp.release_node.push_back(sched.visits[len - 1].node);
        fp.release_time.push_back(sched.visits[len - 1].departure);
    }
    return fp;
}

/// Uses the committed prefixes of another plan for `sol`, which must extend them.
inline FrozenPlan freeze_like(const Instance& inst, const Solution& sol, const FrozenPlan& committed) {
    FrozenPlan fp;
    fp.base = sol;
    fp.frozen_len = committed.frozen_len;
    for (std::size_t k = 0; k < sol.routes.size(); ++k) {
        const RouteSchedule sched = propagate_schedule(inst, static_cast<int>(k), sol.routes[k]);
        fp.release_node.push_back(sched.visits[fp.frozen_len[k] - 1].node);
        fp.release_time.push_back(sched.visits[fp.frozen_len[k] - 1].departure);
    }
    return fp;
}

inline bool extends_prefixes(const Solution& sol, const std::vector<Route>& prefixes) {
    if (sol.routes.size() != prefixes.size()) return false;
    for (std::size_t k = 0; k < prefixes.size(); ++k) {
        const Route& r = sol.routes[k];
        const Route& p = prefixes[k];
        if (r.size() < p.size() + 1 || !std::equal(p.begin(), p.end(), r.begin())) return false;
    }
    return true;
}

/// Best placement of a new couple into the unfrozen part of the plan: every vehicle, every
/// pickup slot, every later delivery slot; capacity-breaching placements are skipped and the
/// minimum-F full solution wins (first found on ties).
///
/// `inst` must already contain the couple (see extend_instance).
inline Solution insert_method1(const Instance& inst, const FrozenPlan& frozen, Couple couple, const Weights& w) {
    const Solution& base = frozen.base;
    const std::size_t k_count = base.routes.size();
    std::vector<RouteEval> evals(k_count);
    for (std::size_t k = 0; k < k_count; ++k) evals[k] = evaluate_route(inst, static_cast<int>(k), base.routes[k]);

    double best_f = std::numeric_limits<double>::infinity();
    std::optional<std::pair<std::size_t, Route>> best;
    Route trial;
    for (std::size_t k = 0; k < k_count; ++k) {
        const Route& r = base.routes[k];
        const int cap = inst.fleet().capacity[k];
        // inserting before index i, for i in [frozen_len, size-1]
        for (std::size_t i = frozen.frozen_len[k]; i < r.size(); ++i) {
            for (std::size_t j = i; j < r.size(); ++j) {
                trial.clear();
                trial.insert(trial.end(), r.begin(), r.begin() + static_cast<std::ptrdiff_t>(i));
                trial.push_back(couple.pickup);
                trial.insert(trial.end(), r.begin() + static_cast<std::ptrdiff_t>(i), r.begin() + static_cast<std::ptrdiff_t>(j));
                trial.push_back(couple.delivery);
                trial.insert(trial.end(), r.begin() + static_cast<std::ptrdiff_t>(j), r.end());
                const RouteEval ev = evaluate_route(inst, static_cast<int>(k), trial);
                if (ev.max_load > cap || ev.min_load < 0) continue;
                ObjectiveVector obj;
                for (std::size_t v = 0; v < k_count; ++v) {
                    obj.f1 += v == k ? ev.cost : evals[v].cost;
                    obj.f2 += v == k ? ev.tardiness : evals[v].tardiness;
                }
                const double f = aggregate_fitness(obj, w);
                if (f < best_f) {
                    best_f = f;
                    best = std::make_pair(k, trial);
                }
            }
        }
    }
    if (!best) throw InsertionFailure("no capacity-feasible placement for couple (" + std::to_string(couple.pickup) + "," +
                                      std::to_string(couple.delivery) + ")");
    Solution out = base;
    out.routes[best->first] = std::move(best->second);
    return out;
}

/// Suffix re-optimization: the GA runs over the uncommitted nodes of `inst` (which includes the
/// pending couples), with each vehicle's committed prefix prepended when decoding.
inline SearchResult run_method2(const Instance& inst, const FrozenPlan& frozen, const GaConfig& cfg,
                                const std::vector<Solution>& seed_solutions = {}) {
    const Weights w = weights_for(cfg, compute_bounds(inst));
    const SearchContext ctx = make_context(inst, frozen.prefixes(), w);
    std::vector<Chromosome> seeds;
    for (const Solution& s : seed_solutions) seeds.push_back(encode(ctx, s));
    return run_search(ctx, cfg, seeds);
}

enum class InsertionMethod { Greedy = 1, Genetic = 2 };

struct EventOutcome {
    double t_d = 0.0;
    bool served = false;
    std::string message;
    Couple couple{-1, -1};             ///< ids in the extended instance, when served
    std::vector<Route> committed;      ///< committed prefixes of the incumbent at t_d
    Solution incumbent_before;
    Solution incumbent_after;
};

struct DynamicResult {
    Instance instance;  ///< base instance plus every served event couple
    ParetoArchive archive;
    RunStats stats;
    BoundsReport bounds;
    Weights weights;
    Solution incumbent;
    std::vector<EventOutcome> events;
};

inline std::uint64_t event_seed(std::uint64_t base, std::size_t index) {
    return base + 0x9E3779B97F4A7C15ULL * (index + 1);
}

/// Static plan first, then every event in time order: freeze the incumbent at t_d and apply the
/// selected insertion method. Insertion failures are recorded and the run carries on.
inline DynamicResult run_dynamic(const Instance& inst, const std::vector<DynamicEvent>& events, const GaConfig& cfg,
                                 InsertionMethod method) {
    for (std::size_t i = 1; i < events.size(); ++i)
        if (events[i].t_d < events[i - 1].t_d) throw ContractViolation("events must be sorted by appearance time");

    StaticResult st = run_static(inst, cfg);
    DynamicResult out{inst, std::move(st.archive), std::move(st.stats), st.bounds, st.weights, {}, {}};
    if (auto best = out.archive.best_index(out.weights)) out.incumbent = out.archive.entries()[*best].solution;

    for (std::size_t e = 0; e < events.size(); ++e) {
        const DynamicEvent& ev = events[e];
        EventOutcome oc;
        oc.t_d = ev.t_d;
        if (out.incumbent.routes.empty()) {
            oc.message = "no feasible plan to insert into";
            out.events.push_back(std::move(oc));
            continue;
        }
        const FrozenPlan frozen = freeze_prefix(out.instance, out.incumbent, ev.t_d);
        oc.committed = frozen.prefixes();
        oc.incumbent_before = out.incumbent;

        Instance ext = extend_instance(out.instance, ev);
        const Couple couple = ext.couples().back();
        const BoundsReport b = compute_bounds(ext);
        const Weights w = weights_for(cfg, b);

        std::optional<Solution> greedy;
        try {
            greedy = insert_method1(ext, frozen, couple, w);
        } catch (const InsertionFailure& err) {
            oc.message = err.what();
        }

        ParetoArchive next = make_archive(cfg);
        if (method == InsertionMethod::Greedy) {
            if (greedy) {
                next.insert(evaluate(ext, *greedy), *greedy);
                for (const auto& entry : out.archive.entries()) {
                    if (entry.solution == out.incumbent || !extends_prefixes(entry.solution, oc.committed)) continue;
                    try {
                        Solution s = insert_method1(ext, freeze_like(out.instance, entry.solution, frozen), couple, w);
                        next.insert(evaluate(ext, s), std::move(s));
                    } catch (const InsertionFailure&) {
                    }
                }
            }
        } else {
            GaConfig sub = cfg;
            sub.seed = event_seed(cfg.seed, e);
            std::vector<Solution> seeds;
            if (greedy) seeds.push_back(*greedy);
            SearchResult res = run_method2(ext, frozen, sub, seeds);
            next = std::move(res.archive);
            out.stats = std::move(res.stats);
            if (next.empty() && oc.message.empty()) oc.message = "suffix search found no feasible plan";
        }

        if (next.empty()) {
            // keep only the alternatives that agree with what has already been executed
            ParetoArchive kept = make_archive(cfg);
            for (const auto& entry : out.archive.entries())
                if (extends_prefixes(entry.solution, oc.committed)) kept.insert(entry.obj, entry.solution);
            out.archive = std::move(kept);
            oc.incumbent_after = out.incumbent;
            out.events.push_back(std::move(oc));
            continue;
        }

        oc.served = true;
        oc.message.clear();
        oc.couple = couple;
        out.instance = std::move(ext);
        out.bounds = b;
        out.weights = w;
        out.archive = std::move(next);
        if (method == InsertionMethod::Greedy) {
            out.incumbent = *greedy;
        } else {
            out.incumbent = out.archive.entries()[*out.archive.best_index(w)].solution;
        }
        oc.incumbent_after = out.incumbent;
        out.events.push_back(std::move(oc));
    }

    out.stats.n_sol = out.archive.size();
    out.stats.n_k.clear();
    for (const auto& entry : out.archive.entries()) out.stats.n_k.push_back(used_vehicles(entry.solution));
    return out;
}

} // namespace pdptw
