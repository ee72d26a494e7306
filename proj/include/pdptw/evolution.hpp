#pragma once

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <optional>
#include <random>
#include <utility>
#include <vector>

#include "pdptw/bounds.hpp"
#include "pdptw/chromosome.hpp"
#include "pdptw/config.hpp"
#include "pdptw/pareto.hpp"
#include "pdptw/schedule.hpp"

namespace pdptw {

struct Individual {
    Chromosome chrom;
    Solution solution;
    ObjectiveVector obj;
    double fitness = 0.0;
};

struct RunStats {
    int generations = 0;
    long evaluations = 0;
    long infeasible = 0;
    std::vector<double> best_fitness;  ///< archive min-F after each generation (index 0 = initial)
    std::size_t n_sol = 0;
    std::vector<int> n_k;  ///< used vehicles per archive entry
};

struct GaState {
    std::vector<Individual> population;
    ParetoArchive archive;
    Rng rng;
    RunStats stats;
};

inline Weights weights_for(const GaConfig& cfg, const BoundsReport& b) {
    return {cfg.lambda1, cfg.lambda2, b.c1, b.c2};
}

inline ParetoArchive make_archive(const GaConfig& cfg) {
    if (cfg.archive_capacity == 0) return ParetoArchive(std::nullopt);
    return ParetoArchive(static_cast<std::size_t>(cfg.archive_capacity));
}

/// Runs the correction pipeline and evaluates the result. nullopt when infeasible.
inline std::optional<Individual> make_individual(const SearchContext& ctx, const Chromosome& raw) {
    auto fixed = correct(ctx, raw);
    if (!fixed) return std::nullopt;
    Individual ind;
    ind.chrom = std::move(*fixed);
    ind.solution = decode(ctx, ind.chrom);
    ind.obj = evaluate(ctx.instance(), ind.solution);
    ind.fitness = aggregate_fitness(ind.obj, ctx.weights);
    return ind;
}

namespace detail {

inline void submit(GaState& st, const Individual& ind) { st.archive.insert(ind.obj, ind.solution); }

inline const Individual& tournament(const std::vector<Individual>& pop, Rng& rng) {
    std::uniform_int_distribution<std::size_t> pick(0, pop.size() - 1);
    const Individual& a = pop[pick(rng)];
    const Individual& b = pop[pick(rng)];
    return b.fitness < a.fitness ? b : a;
}

inline void fill_random(const SearchContext& ctx, std::size_t target, std::vector<Individual>& pop, GaState& st) {
    const std::size_t max_attempts = 50 * std::max<std::size_t>(target, 1);
    for (std::size_t attempt = 0; pop.size() < target && attempt < max_attempts; ++attempt) {
        ++st.stats.evaluations;
        auto ind = make_individual(ctx, random_chromosome(ctx, st.rng));
        if (!ind) {
            ++st.stats.infeasible;
            continue;
        }
        submit(st, *ind);
        pop.push_back(std::move(*ind));
    }
}

} // namespace detail

/// `population_size` random permutations with random splits, each corrected; infeasible draws
/// are redrawn (bounded number of attempts).
inline std::vector<Individual> init_population(const SearchContext& ctx, const GaConfig& cfg, GaState& st) {
    std::vector<Individual> pop;
    detail::fill_random(ctx, static_cast<std::size_t>(cfg.population_size), pop, st);
    return pop;
}

/// One generation: 2n offspring by crossover / mutation / copy with binary tournaments on F.
/// Crossover and mutation children are also tried with split_samples - 1 fresh split vectors.
/// Everything feasible goes to the archive; the n best distinct individuals of parents plus
/// offspring survive (duplicates only when too few are distinct), topped up with random
/// individuals if needed.
inline void evolve_generation(const SearchContext& ctx, const GaConfig& cfg, GaState& st) {
    const std::size_t n = static_cast<std::size_t>(cfg.population_size);
    std::vector<Individual> pool = st.population;
    if (!st.population.empty()) {
        std::uniform_real_distribution<double> coin(0.0, 1.0);
        for (std::size_t i = 0; i < 2 * n; ++i) {
            const double r = coin(st.rng);
            Chromosome child;
            bool resample = true;
            if (r < cfg.crossover_rate) {
                const Individual& a = detail::tournament(st.population, st.rng);
                const Individual& b = detail::tournament(st.population, st.rng);
                child = crossover(a.chrom, b.chrom, st.rng);
            } else if (r < cfg.crossover_rate + cfg.mutation_rate) {
                child = mutate(detail::tournament(st.population, st.rng).chrom, st.rng);
            } else {
                child = detail::tournament(st.population, st.rng).chrom;
                resample = false;
            }
            const int variants = resample ? cfg.split_samples : 1;
            for (int v = 0; v < variants; ++v) {
                Chromosome trial = child;
                if (v > 0) trial.splits = sample_splits(trial.splits.size(), trial.perm.size(), st.rng);
                ++st.stats.evaluations;
                auto ind = make_individual(ctx, trial);
                if (!ind) {
                    ++st.stats.infeasible;
                    continue;
                }
                detail::submit(st, *ind);
                pool.push_back(std::move(*ind));
            }
        }
    }

    std::vector<std::size_t> order(pool.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return pool[a].fitness < pool[b].fitness; });
    std::vector<Individual> next;
    next.reserve(n);
    std::vector<char> taken(pool.size(), 0);
    for (std::size_t idx : order) {
        if (next.size() == n) break;
        const Individual& cand = pool[idx];
        const bool dup = std::any_of(next.begin(), next.end(), [&](const Individual& o) {
            return o.fitness == cand.fitness && o.chrom == cand.chrom;
        });
        if (!dup) {
            next.push_back(cand);
            taken[idx] = 1;
        }
    }
    // not enough distinct individuals: fall back to duplicates in fitness order
    for (std::size_t idx : order) {
        if (next.size() == n) break;
        if (!taken[idx]) next.push_back(pool[idx]);
    }
    detail::fill_random(ctx, n, next, st);
    st.population = std::move(next);
    ++st.stats.generations;
}

namespace detail {

inline double archive_best(const GaState& st, const Weights& w) {
    const auto i = st.archive.best_index(w);
    return i ? aggregate_fitness(st.archive.entries()[*i].obj, w) : std::numeric_limits<double>::infinity();
}

inline void finish_stats(GaState& st) {
    st.stats.n_sol = st.archive.size();
    st.stats.n_k.clear();
    for (const auto& e : st.archive.entries()) st.stats.n_k.push_back(used_vehicles(e.solution));
}

} // namespace detail

struct SearchResult {
    ParetoArchive archive;
    RunStats stats;
};

/// Generation loop over an arbitrary search context. `seeds` are corrected and placed in the
/// initial population ahead of random individuals.
inline SearchResult run_search(const SearchContext& ctx, const GaConfig& cfg, const std::vector<Chromosome>& seeds = {}) {
    cfg.validate();
    GaState st{{}, make_archive(cfg), Rng(cfg.seed), {}};
    for (const Chromosome& s : seeds) {
        if (st.population.size() >= static_cast<std::size_t>(cfg.population_size)) break;
        ++st.stats.evaluations;
        if (auto ind = make_individual(ctx, s)) {
            detail::submit(st, *ind);
            st.population.push_back(std::move(*ind));
        } else {
            ++st.stats.infeasible;
        }
    }
    detail::fill_random(ctx, static_cast<std::size_t>(cfg.population_size), st.population, st);
    st.stats.best_fitness.push_back(detail::archive_best(st, ctx.weights));
    for (int g = 0; g < cfg.generations; ++g) {
        evolve_generation(ctx, cfg, st);
        st.stats.best_fitness.push_back(detail::archive_best(st, ctx.weights));
    }
    detail::finish_stats(st);
    return {std::move(st.archive), std::move(st.stats)};
}

struct StaticResult {
    ParetoArchive archive;
    RunStats stats;
    BoundsReport bounds;
    Weights weights;
};

/// Static optimization: bounds -> weights -> fixed generation budget. Deterministic per seed.
inline StaticResult run_static(const Instance& inst, const GaConfig& cfg) {
    const BoundsReport b = compute_bounds(inst);
    const Weights w = weights_for(cfg, b);
    const SearchContext ctx = static_context(inst, w);
    auto res = run_search(ctx, cfg);
    return {std::move(res.archive), std::move(res.stats), b, w};
}

} // namespace pdptw
