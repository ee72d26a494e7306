#pragma once

#include <algorithm>
#include <cstddef>
#include <limits>
#include <numeric>
#include <optional>
#include <random>
#include <utility>
#include <vector>

#include "pdptw/errors.hpp"
#include "pdptw/instance.hpp"
#include "pdptw/schedule.hpp"

namespace pdptw {

using Rng = std::mt19937_64;

/// Which nodes the search may move, and the committed head of every route.
///
/// In the static problem every prefix is just the depot and every non-depot node is a gene.
/// After a dynamic event, prefixes hold the visits already departed and genes hold the rest.
struct SearchContext {
    const Instance* inst = nullptr;
    std::vector<Route> prefixes;        ///< per vehicle, starts with the depot
    std::vector<NodeId> genes;          ///< nodes placed by chromosomes
    std::vector<int> frozen_vehicle;    ///< per node: vehicle holding it in a prefix, else -1
    Weights weights;

    const Instance& instance() const { return *inst; }
    int vehicles() const { return static_cast<int>(prefixes.size()); }
};

inline SearchContext make_context(const Instance& inst, std::vector<Route> prefixes, const Weights& w) {
    if (static_cast<int>(prefixes.size()) != inst.vehicles())
        throw ContractViolation("one prefix per vehicle required");
    SearchContext ctx;
    ctx.inst = &inst;
    ctx.weights = w;
    ctx.frozen_vehicle.assign(inst.node_count(), -1);
    for (std::size_t k = 0; k < prefixes.size(); ++k) {
        if (prefixes[k].empty() || prefixes[k].front() != kDepot)
            throw ContractViolation("prefix must start at the depot");
        for (std::size_t i = 1; i < prefixes[k].size(); ++i)
            ctx.frozen_vehicle[static_cast<std::size_t>(prefixes[k][i])] = static_cast<int>(k);
    }
    for (NodeId id = 1; id < static_cast<NodeId>(inst.node_count()); ++id)
        if (ctx.frozen_vehicle[static_cast<std::size_t>(id)] < 0) ctx.genes.push_back(id);
    ctx.prefixes = std::move(prefixes);
    return ctx;
}

inline SearchContext static_context(const Instance& inst, const Weights& w) {
    return make_context(inst, std::vector<Route>(static_cast<std::size_t>(inst.vehicles()), Route{kDepot}), w);
}

/// Permutation of the gene nodes plus the number of consecutive genes each vehicle takes.
struct Chromosome {
    std::vector<NodeId> perm;
    std::vector<int> splits;

    bool operator==(const Chromosome&) const = default;
    auto operator<=>(const Chromosome&) const = default;
};

inline bool valid_chromosome(const Chromosome& c, std::size_t vehicles) {
    if (c.splits.size() != vehicles) return false;
    long total = 0;
    for (int s : c.splits) {
        if (s < 0) return false;
        total += s;
    }
    if (total != static_cast<long>(c.perm.size())) return false;
    auto sorted = c.perm;
    std::sort(sorted.begin(), sorted.end());
    return std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end() &&
           std::find(sorted.begin(), sorted.end(), kDepot) == sorted.end();
}

/// The per-vehicle gene blocks of a chromosome (no depots, no prefixes).
inline std::vector<Route> blocks_of(const Chromosome& c) {
    std::vector<Route> out(c.splits.size());
    std::size_t at = 0;
    for (std::size_t k = 0; k < c.splits.size(); ++k) {
        const auto len = static_cast<std::size_t>(c.splits[k]);
        out[k].assign(c.perm.begin() + static_cast<std::ptrdiff_t>(at),
                      c.perm.begin() + static_cast<std::ptrdiff_t>(at + len));
        at += len;
    }
    return out;
}

inline Chromosome chromosome_of(const std::vector<Route>& blocks) {
    Chromosome c;
    for (const Route& b : blocks) {
        c.perm.insert(c.perm.end(), b.begin(), b.end());
        c.splits.push_back(static_cast<int>(b.size()));
    }
    return c;
}

/// Vehicle k takes the k-th consecutive block of the permutation, bracketed by the depot.
inline Solution decode(const Chromosome& c) {
    if (!valid_chromosome(c, c.splits.size())) throw ContractViolation("invalid chromosome");
    Solution sol;
    for (Route& b : blocks_of(c)) {
        Route r{kDepot};
        r.insert(r.end(), b.begin(), b.end());
        r.push_back(kDepot);
        sol.routes.push_back(std::move(r));
    }
    return sol;
}

/// As decode(), with each vehicle's committed prefix in front of its block.
inline Solution decode(const SearchContext& ctx, const Chromosome& c) {
    if (c.splits.size() != ctx.prefixes.size()) throw ContractViolation("chromosome/vehicle count mismatch");
    Solution sol;
    sol.routes.reserve(ctx.prefixes.size());
    std::size_t at = 0;
    for (std::size_t k = 0; k < c.splits.size(); ++k) {
        Route r = ctx.prefixes[k];
        const auto len = static_cast<std::size_t>(c.splits[k]);
        r.insert(r.end(), c.perm.begin() + static_cast<std::ptrdiff_t>(at),
                 c.perm.begin() + static_cast<std::ptrdiff_t>(at + len));
        r.push_back(kDepot);
        at += len;
        sol.routes.push_back(std::move(r));
    }
    return sol;
}

inline Chromosome encode(const Solution& sol) {
    Chromosome c;
    for (const Route& r : sol.routes) {
        if (!depot_bracketed(r)) throw ContractViolation("route must begin and end at the depot");
        c.perm.insert(c.perm.end(), r.begin() + 1, r.end() - 1);
        c.splits.push_back(static_cast<int>(r.size()) - 2);
    }
    return c;
}

/// Strips the committed prefixes of `ctx` off each route.
inline Chromosome encode(const SearchContext& ctx, const Solution& sol) {
    Chromosome c;
    for (std::size_t k = 0; k < sol.routes.size(); ++k) {
        const Route& r = sol.routes[k];
        const Route& p = ctx.prefixes.at(k);
        if (!depot_bracketed(r) || r.size() < p.size() + 1 || !std::equal(p.begin(), p.end(), r.begin()))
            throw ContractViolation("route does not extend its committed prefix");
        c.perm.insert(c.perm.end(), r.begin() + static_cast<std::ptrdiff_t>(p.size()), r.end() - 1);
        c.splits.push_back(static_cast<int>(r.size() - p.size()) - 1);
    }
    return c;
}

/// Random composition of `length` genes over a random subset of vehicles.
inline std::vector<int> sample_splits(std::size_t vehicles, std::size_t length, Rng& rng) {
    std::vector<int> splits(vehicles, 0);
    if (length == 0 || vehicles == 0) return splits;
    const std::size_t max_used = std::min(vehicles, length);
    const std::size_t used = std::uniform_int_distribution<std::size_t>(1, max_used)(rng);

    std::vector<std::size_t> ids(vehicles);
    std::iota(ids.begin(), ids.end(), 0);
    std::shuffle(ids.begin(), ids.end(), rng);
    ids.resize(used);
    std::sort(ids.begin(), ids.end());

    std::vector<std::size_t> cuts(length - 1);
    std::iota(cuts.begin(), cuts.end(), 1);
    std::shuffle(cuts.begin(), cuts.end(), rng);
    cuts.resize(used - 1);
    cuts.push_back(0);
    cuts.push_back(length);
    std::sort(cuts.begin(), cuts.end());
    for (std::size_t u = 0; u < used; ++u) splits[ids[u]] = static_cast<int>(cuts[u + 1] - cuts[u]);
    return splits;
}

inline Chromosome random_chromosome(const SearchContext& ctx, Rng& rng) {
    Chromosome c;
    c.perm = ctx.genes;
    std::shuffle(c.perm.begin(), c.perm.end(), rng);
    c.splits = sample_splits(ctx.prefixes.size(), c.perm.size(), rng);
    return c;
}

/// Order crossover over the segment [first, last] (0-based, inclusive): the child keeps p1's
/// genes there and takes the remaining genes in p2's relative order, left to right.
/// Splits come from p1.
inline Chromosome order_crossover(const Chromosome& p1, const Chromosome& p2, std::size_t first, std::size_t last) {
    const std::size_t n = p1.perm.size();
    if (p2.perm.size() != n || (n > 0 && (first > last || last >= n)))
        throw ContractViolation("crossover segment out of range");
    Chromosome child;
    child.splits = p1.splits;
    if (n == 0) return child;
    child.perm.assign(n, kDepot);
    std::vector<NodeId> in_segment(p1.perm.begin() + static_cast<std::ptrdiff_t>(first),
                                   p1.perm.begin() + static_cast<std::ptrdiff_t>(last + 1));
    std::sort(in_segment.begin(), in_segment.end());
    for (std::size_t i = first; i <= last; ++i) child.perm[i] = p1.perm[i];
    std::size_t out = 0;
    for (NodeId g : p2.perm) {
        if (std::binary_search(in_segment.begin(), in_segment.end(), g)) continue;
        if (out == first) out = last + 1;
        child.perm[out++] = g;
    }
    return child;
}

inline Chromosome crossover(const Chromosome& p1, const Chromosome& p2, Rng& rng) {
    if (p1.perm.empty()) return order_crossover(p1, p2, 0, 0);
    std::uniform_int_distribution<std::size_t> pos(0, p1.perm.size() - 1);
    std::size_t a = pos(rng);
    std::size_t b = pos(rng);
    if (a > b) std::swap(a, b);
    return order_crossover(p1, p2, a, b);
}

inline Chromosome swap_genes(Chromosome c, std::size_t i, std::size_t j) {
    std::swap(c.perm.at(i), c.perm.at(j));
    return c;
}

/// Moves one gene of block mass from `from` to `to`. No-op when `from` is empty.
inline Chromosome shift_split(Chromosome c, std::size_t from, std::size_t to) {
    if (c.splits.at(from) > 0) {
        --c.splits[from];
        ++c.splits.at(to);
    }
    return c;
}

/// Swap two genes or shift one unit of split mass, with equal probability.
inline Chromosome mutate(const Chromosome& c, Rng& rng) {
    const bool do_swap = std::uniform_int_distribution<int>(0, 1)(rng) == 0;
    if (do_swap) {
        if (c.perm.size() < 2) return c;
        std::uniform_int_distribution<std::size_t> pos(0, c.perm.size() - 1);
        const std::size_t i = pos(rng);
        std::size_t j = pos(rng);
        while (j == i) j = pos(rng);
        return swap_genes(c, i, j);
    }
    std::vector<std::size_t> donors;
    for (std::size_t k = 0; k < c.splits.size(); ++k)
        if (c.splits[k] > 0) donors.push_back(k);
    if (donors.empty() || c.splits.size() < 2) return c;
    const std::size_t from = donors[std::uniform_int_distribution<std::size_t>(0, donors.size() - 1)(rng)];
    std::size_t to = std::uniform_int_distribution<std::size_t>(0, c.splits.size() - 2)(rng);
    if (to >= from) ++to;
    return shift_split(c, from, to);
}

namespace detail {

inline double route_fitness(const SearchContext& ctx, std::size_t k, const Route& block) {
    Route full = ctx.prefixes[k];
    full.insert(full.end(), block.begin(), block.end());
    full.push_back(kDepot);
    const RouteEval ev = evaluate_route(ctx.instance(), static_cast<int>(k), full);
    return ctx.weights.lambda1 * ctx.weights.c1 * ev.cost + ctx.weights.lambda2 * ctx.weights.c2 * ev.tardiness;
}

} // namespace detail

/// Within each block, a customer placed before its own supplier moves to right after it.
inline Chromosome precedence_correction(const SearchContext& ctx, const Chromosome& c) {
    const Instance& inst = ctx.instance();
    std::vector<Route> blocks = blocks_of(c);
    for (Route& b : blocks) {
        std::vector<NodeId> displaced;
        std::vector<char> seen(inst.node_count(), 0);
        Route kept;
        kept.reserve(b.size());
        // a customer is displaced when its supplier shows up later in the same block
        std::vector<char> in_block(inst.node_count(), 0);
        for (NodeId id : b) in_block[static_cast<std::size_t>(id)] = 1;
        for (NodeId id : b) {
            seen[static_cast<std::size_t>(id)] = 1;
            if (inst.is_delivery(id)) {
                const NodeId sup = inst.partner(id);
                if (sup > 0 && in_block[static_cast<std::size_t>(sup)] && !seen[static_cast<std::size_t>(sup)]) {
                    displaced.push_back(id);
                    continue;
                }
            }
            kept.push_back(id);
        }
        if (displaced.empty()) continue;
        Route fixed;
        fixed.reserve(b.size());
        std::vector<char> pending(inst.node_count(), 0);
        for (NodeId d : displaced) pending[static_cast<std::size_t>(inst.partner(d))] = 1;
        for (NodeId id : kept) {
            fixed.push_back(id);
            if (pending[static_cast<std::size_t>(id)]) fixed.push_back(inst.partner(id));
        }
        b = std::move(fixed);
    }
    return chromosome_of(blocks);
}

/// Moves the customer of every couple split across vehicles onto its supplier's vehicle,
/// at the position after the supplier that yields the lowest route fitness.
inline Chromosome pairing_correction(const SearchContext& ctx, const Chromosome& c) {
    const Instance& inst = ctx.instance();
    std::vector<Route> blocks = blocks_of(c);
    std::vector<int> vehicle_of(inst.node_count(), -1);
    for (std::size_t k = 0; k < blocks.size(); ++k)
        for (NodeId id : blocks[k]) vehicle_of[static_cast<std::size_t>(id)] = static_cast<int>(k);
    for (NodeId id = 1; id < static_cast<NodeId>(inst.node_count()); ++id)
        if (ctx.frozen_vehicle[static_cast<std::size_t>(id)] >= 0)
            vehicle_of[static_cast<std::size_t>(id)] = ctx.frozen_vehicle[static_cast<std::size_t>(id)];

    for (const auto& [p, d] : inst.couples()) {
        const int vp = vehicle_of[static_cast<std::size_t>(p)];
        const int vd = vehicle_of[static_cast<std::size_t>(d)];
        if (vp == vd || vp < 0 || vd < 0) continue;
        if (ctx.frozen_vehicle[static_cast<std::size_t>(d)] >= 0) continue;  // committed, cannot move

        Route& from = blocks[static_cast<std::size_t>(vd)];
        from.erase(std::find(from.begin(), from.end(), d));

        Route& host = blocks[static_cast<std::size_t>(vp)];
        std::size_t lo = 0;
        if (ctx.frozen_vehicle[static_cast<std::size_t>(p)] < 0)
            lo = static_cast<std::size_t>(std::find(host.begin(), host.end(), p) - host.begin()) + 1;
        std::size_t best_pos = lo;
        double best = std::numeric_limits<double>::infinity();
        for (std::size_t pos = lo; pos <= host.size(); ++pos) {
            Route trial = host;
            trial.insert(trial.begin() + static_cast<std::ptrdiff_t>(pos), d);
            const double f = detail::route_fitness(ctx, static_cast<std::size_t>(vp), trial);
            if (f < best) {
                best = f;
                best_pos = pos;
            }
        }
        host.insert(host.begin() + static_cast<std::ptrdiff_t>(best_pos), d);
        vehicle_of[static_cast<std::size_t>(d)] = vp;
    }
    return chromosome_of(blocks);
}

/// Repairs load overflows by relocating the couple whose pickup first overflows a route to the
/// end of the vehicle with the largest residual peak capacity. Returns nullopt when no vehicle
/// can carry that couple.
inline std::optional<Chromosome> capacity_correction(const SearchContext& ctx, const Chromosome& c) {
    const Instance& inst = ctx.instance();
    const auto& cap = inst.fleet().capacity;
    std::vector<Route> blocks = blocks_of(c);
    const std::size_t k_count = blocks.size();

    auto peak_of = [&](std::size_t k, int* overflow_at) {
        int load = 0;
        int peak = 0;
        if (overflow_at) *overflow_at = -1;
        for (std::size_t i = 1; i < ctx.prefixes[k].size(); ++i) {
            load += inst.node(ctx.prefixes[k][i]).q;
            peak = std::max(peak, load);
        }
        for (std::size_t i = 0; i < blocks[k].size(); ++i) {
            load += inst.node(blocks[k][i]).q;
            peak = std::max(peak, load);
            if (overflow_at && *overflow_at < 0 && load > cap[k]) *overflow_at = static_cast<int>(i);
        }
        return peak;
    };

    const std::size_t max_moves = (inst.couples().size() + 1) * k_count + 1;
    for (std::size_t moves = 0; moves <= max_moves; ++moves) {
        std::size_t src = k_count;
        int at = -1;
        for (std::size_t k = 0; k < k_count; ++k) {
            if (peak_of(k, &at) > cap[k]) {
                src = k;
                break;
            }
        }
        if (src == k_count) return chromosome_of(blocks);
        if (at < 0) return std::nullopt;  // committed prefix already overflows

        const NodeId pick = blocks[src][static_cast<std::size_t>(at)];
        if (!inst.is_pickup(pick)) return std::nullopt;
        const NodeId drop = inst.partner(pick);
        const int q = inst.node(pick).q;

        std::erase(blocks[src], pick);
        std::erase(blocks[src], drop);

        std::size_t host = k_count;
        int best_residual = std::numeric_limits<int>::min();
        for (std::size_t k = 0; k < k_count; ++k) {
            if (k == src || cap[k] < q) continue;
            const int residual = cap[k] - peak_of(k, nullptr);
            if (residual > best_residual) {
                best_residual = residual;
                host = k;
            }
        }
        if (host == k_count && cap[src] >= q) host = src;
        if (host == k_count) return std::nullopt;
        blocks[host].push_back(pick);
        blocks[host].push_back(drop);
    }
    return std::nullopt;
}

/// precedence -> pairing -> capacity. nullopt marks an individual that cannot be repaired.
inline std::optional<Chromosome> correct(const SearchContext& ctx, const Chromosome& c) {
    return capacity_correction(ctx, pairing_correction(ctx, precedence_correction(ctx, c)));
}

} // namespace pdptw
