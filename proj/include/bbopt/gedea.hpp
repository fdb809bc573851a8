#ifndef BBOPT_GEDEA_HPP
#define BBOPT_GEDEA_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numeric>
#include <random>
#include <unordered_set>
#include <vector>

#include "bbopt/core.hpp"
#include "bbopt/evaluator.hpp"
#include "bbopt/run.hpp"

namespace bbopt {

struct GedeaConfig {
    int population_size = 0;     // even, >= 4; 0 resolves to 2 * batch_size
    int generations = 1000000;   // effectively "until budget" unless set lower
    double crossover_rate = 0.9;
    double mutation_rate = 0.0;  // per gene; 0 resolves to 1/dim
    double mutation_sigma = 0.1; // fraction of each range
    double blend_alpha = 0.5;    // crossover interval extension margin

    void validate() const {
        if (population_size != 0 && (population_size < 4 || population_size % 2 != 0))
            throw ConfigError("gedea: population_size must be an even integer >= 4");
        if (generations < 1) throw ConfigError("gedea: generations must be >= 1");
        if (crossover_rate < 0 || crossover_rate > 1)
            throw ConfigError("gedea: crossover_rate must be in [0,1]");
        if (mutation_rate < 0 || mutation_rate > 1)
            throw ConfigError("gedea: mutation_rate must be in [0,1]");
        if (mutation_sigma <= 0) throw ConfigError("gedea: mutation_sigma must be positive");
        if (blend_alpha < 0) throw ConfigError("gedea: blend_alpha must be >= 0");
    }
};

struct GedeaIndividual {
    EvaluationRecord rec;
    int rank = 0;
    double diversity = 0.0;
};

/// Normalized distance to the nearest other genome, per genome.
inline std::vector<double> nearest_neighbor_diversity(const SearchSpace& space,
                                                      const std::vector<Point>& genomes) {
    const std::size_t n = genomes.size();
    std::vector<double> div(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        double nearest = std::numeric_limits<double>::infinity();
        for (std::size_t j = 0; j < n; ++j)
            if (j != i) nearest = std::min(nearest, normalized_distance(space, genomes[i], genomes[j]));
        div[i] = (n > 1) ? nearest : 0.0;
    }
    return div;
}

/// Uniform random population, clone-free under quantization.
inline std::vector<Point> init_population(const SearchSpace& space, std::size_t n,
                                          std::mt19937_64& rng) {
    std::unordered_set<QuantizedKey, QuantizedKeyHash> seen;
    std::vector<Point> pop;
    pop.reserve(n);
    while (pop.size() < n) {
        Point p = uniform_point(rng, space);
        if (seen.insert(quantize(space, p)).second) pop.push_back(std::move(p));
    }
    return pop;
}

/// Pairwise blend crossover plus per-gene Gaussian mutation over a mating
/// pool, producing exactly pool.size() children (clamped, not deduped).
inline std::vector<Point> make_offspring(const std::vector<Point>& pool, const SearchSpace& space,
                                         const GedeaConfig& cfg, std::mt19937_64& rng) {
    if (pool.empty() || pool.size() % 2 != 0)
        throw ConfigError("make_offspring: mating pool size must be positive and even");
    const std::size_t dim = space.dim();
    const double mut_rate =
        cfg.mutation_rate > 0 ? cfg.mutation_rate : 1.0 / static_cast<double>(dim);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::vector<Point> children;
    children.reserve(pool.size());
    for (std::size_t k = 0; k + 1 < pool.size(); k += 2) {
        const Point& a = pool[k];
        const Point& b = pool[k + 1];
        Point c1 = a, c2 = b;
        if (unit(rng) < cfg.crossover_rate) {
            for (std::size_t i = 0; i < dim; ++i) {
                const double lo = std::min(a[i], b[i]), hi = std::max(a[i], b[i]);
                const double margin = cfg.blend_alpha * (hi - lo);
                std::uniform_real_distribution<double> blend(lo - margin, hi + margin);
                c1[i] = blend(rng);
                c2[i] = blend(rng);
            }
        }
        for (Point* c : {&c1, &c2})
            for (std::size_t i = 0; i < dim; ++i)
                if (unit(rng) < mut_rate)
                    (*c)[i] += gaussian(rng, 0.0, cfg.mutation_sigma * space.range(i));
        children.push_back(space.clamp(c1));
        children.push_back(space.clamp(c2));
    }
    return children;
}

/// Replaces quantized duplicates with fresh uniform genomes; the first member
/// of each duplicate set survives. Result is clone-free.
inline std::vector<Point> replace_clones(std::vector<Point> pop, const SearchSpace& space,
                                         std::mt19937_64& rng) {
    std::unordered_set<QuantizedKey, QuantizedKeyHash> seen;
    for (Point& p : pop) {
        if (seen.insert(quantize(space, p)).second) continue;
        Point fresh;
        do {
            fresh = uniform_point(rng, space);
        } while (!seen.insert(quantize(space, fresh)).second);
        p = std::move(fresh);
    }
    return pop;
}

/// Non-dominated sorting over the objectives augmented with diversity as an
/// extra maximized objective, filling `capacity` slots by ascending rank with
/// the last partial rank truncated by descending diversity; the best
/// weighted-sum individual always survives (elitism), evicting the
/// worst-diversity member of the last admitted rank when necessary.
inline std::vector<GedeaIndividual> rank_and_select(std::vector<GedeaIndividual> all,
                                                    const SearchSpace& space, const Scalarizer& scal,
                                                    std::size_t capacity) {
    if (all.empty()) throw ConfigError("rank_and_select: empty population");
    if (capacity == 0 || capacity > all.size())
        throw ConfigError("rank_and_select: capacity must be in [1, population size]");
    std::vector<Point> genomes;
    genomes.reserve(all.size());
    for (const auto& ind : all) genomes.push_back(ind.rec.point);
    const std::vector<double> div = nearest_neighbor_diversity(space, genomes);

    // Diversity is always maximized; under a minimizing sense it is appended
    // negated so one sorting sense covers both.
    std::vector<ObjectiveReport> extended(all.size());
    for (std::size_t i = 0; i < all.size(); ++i) {
        extended[i].values = all[i].rec.report.values;
        extended[i].values.push_back(scal.sense == Sense::maximize ? div[i] : -div[i]);
        extended[i].trust_penalty = 0.0;
    }
    const std::vector<int> ranks = non_dominated_sort(extended, scal.sense);
    for (std::size_t i = 0; i < all.size(); ++i) {
        all[i].rank = ranks[i];
        all[i].diversity = div[i];
    }

    std::vector<std::size_t> order(all.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (all[a].rank != all[b].rank) return all[a].rank < all[b].rank;
        return all[a].diversity > all[b].diversity;
    });
    std::vector<std::size_t> chosen(order.begin(), order.begin() + capacity);

    std::size_t elite = 0;
    for (std::size_t i = 1; i < all.size(); ++i)
        if (scal.improves(all[i].rec.scalar, all[elite].rec.scalar)) elite = i;
    if (std::find(chosen.begin(), chosen.end(), elite) == chosen.end()) {
        std::size_t evict = 0;
        for (std::size_t k = 1; k < chosen.size(); ++k) {
            const auto& cur = all[chosen[k]];
            const auto& worst = all[chosen[evict]];
            if (cur.rank > worst.rank ||
                (cur.rank == worst.rank && cur.diversity < worst.diversity))
                evict = k;
        }
        chosen[evict] = elite;
    }

    std::vector<GedeaIndividual> next;
    next.reserve(capacity);
    for (std::size_t idx : chosen) next.push_back(all[idx]);
    return next;
}

namespace detail {

/// Binary tournament on (rank, then diversity).
inline const GedeaIndividual& tournament(const std::vector<GedeaIndividual>& pop,
                                         std::mt19937_64& rng) {
    std::uniform_int_distribution<std::size_t> pick(0, pop.size() - 1);
    const GedeaIndividual& a = pop[pick(rng)];
    const GedeaIndividual& b = pop[pick(rng)];
    if (a.rank != b.rank) return a.rank < b.rank ? a : b;
    return a.diversity >= b.diversity ? a : b;
}

}  // namespace detail

/// Diversity-preserving genetic algorithm: generational loop with blend
/// crossover, Gaussian mutation, clone replacement, and dual selection
/// pressure toward the Pareto set and genetic diversity.
inline RunResult run_gedea(const Problem& problem, const GedeaConfig& cfg, const Scalarizer& scal,
                           const Budget& budget, std::uint64_t seed, const Point* start = nullptr,
                           bool real_time = false) {
    cfg.validate();
    RunContext ctx(problem, scal, budget, seed, real_time);
    auto rng = ctx.engine(4);
    const SearchSpace& space = problem.space;
    const std::size_t n = static_cast<std::size_t>(
        cfg.population_size ? cfg.population_size : 2 * budget.batch_size);
    if (n < 4 || n % 2 != 0)
        throw ConfigError("gedea: resolved population size must be an even integer >= 4");

    // Offspring must be fresh against every past evaluation so cohort blocks
    // stay full; duplicates are replaced by fresh uniform genomes.
    auto freshen_against_cache = [&](std::vector<Point> genomes) {
        std::unordered_set<QuantizedKey, QuantizedKeyHash> batch;
        for (Point& p : genomes) {
            while (!ctx.is_fresh(p) || !batch.insert(quantize(space, p)).second)
                p = uniform_point(rng, space);
        }
        return genomes;
    };

    std::vector<Point> genomes = init_population(space, n, rng);
    if (start) genomes[0] = space.clamp(*start);
    genomes = freshen_against_cache(replace_clones(std::move(genomes), space, rng));
    auto recs = ctx.submit(genomes);
    std::vector<GedeaIndividual> pop;
    for (const auto& r : recs) pop.push_back({r, 0, 0.0});
    if (pop.empty()) return ctx.finish("gedea", "", kReasonBudget);
    pop = rank_and_select(std::move(pop), space, scal, pop.size());

    std::string reason = kReasonBudget;
    for (int gen = 0; gen < cfg.generations; ++gen) {
        if (ctx.budget_exhausted()) break;
        if (pop.size() < n) break;  // initial cohort was cut short by the budget
        std::vector<Point> pool;
        pool.reserve(n);
        for (std::size_t k = 0; k < n; ++k)
            pool.push_back(detail::tournament(pop, rng).rec.point);
        std::vector<Point> offspring = freshen_against_cache(
            replace_clones(make_offspring(pool, space, cfg, rng), space, rng));
        auto child_recs = ctx.submit(offspring);
        if (child_recs.empty()) break;
        std::vector<GedeaIndividual> combined = pop;
        for (const auto& r : child_recs) combined.push_back({r, 0, 0.0});
        pop = rank_and_select(std::move(combined), space, scal, n);
        if (gen + 1 == cfg.generations) reason = kReasonGenerations;
    }
    return ctx.finish("gedea", "", reason);
}

}  // namespace bbopt

#endif
