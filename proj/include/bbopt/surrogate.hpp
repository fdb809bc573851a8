#ifndef BBOPT_SURROGATE_HPP
#define BBOPT_SURROGATE_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <iostream>
#include <limits>
#include <random>
#include <unordered_set>
#include <utility>
#include <vector>

#include "bbopt/ann.hpp"
#include "bbopt/core.hpp"
#include "bbopt/gedea.hpp"
#include "bbopt/loh.hpp"
#include "bbopt/run.hpp"

namespace bbopt {

struct SurrogateConfig {
    int samples_per_cycle = 0;      // n; 0 resolves to 10 * dim
    int hidden_width = 0;           // 0 resolves to max(8, 2 * dim)
    int epochs = 500;
    double learning_rate = 0.05;
    double validation_fraction = 0.2;
    int cycles = 3;
    double shrink_factor = 0.5;     // gamma
    int predicted_pareto_evals = 0; // k; 0 resolves to max(2, n / 4)
    int loh_iters = 2000;

    void validate() const {
        if (samples_per_cycle < 0) throw ConfigError("loh_ann: samples_per_cycle must be >= 0");
        if (epochs < 0) throw ConfigError("loh_ann: epochs must be >= 0");
        if (learning_rate <= 0) throw ConfigError("loh_ann: learning_rate must be positive");
        if (validation_fraction < 0 || validation_fraction >= 1)
            throw ConfigError("loh_ann: validation_fraction must be in [0,1)");
        if (cycles < 1) throw ConfigError("loh_ann: cycles must be >= 1");
        if (shrink_factor <= 0 || shrink_factor >= 1)
            throw ConfigError("loh_ann: shrink_factor must be in (0,1)");
        if (predicted_pareto_evals < 0)
            throw ConfigError("loh_ann: predicted_pareto_evals must be >= 0");
        if (loh_iters < 0) throw ConfigError("loh_ann: loh_iters must be >= 0");
    }
};

namespace detail {

/// Greedy maximin pick of k points from a predicted front: the best scalar is
/// forced first, then each pick maximizes its distance to the picked set.
inline std::vector<std::size_t> spread_pick(const SearchSpace& space,
                                            const std::vector<Point>& points,
                                            const std::vector<double>& scalars, Sense sense,
                                            std::size_t k) {
    std::vector<std::size_t> picked;
    if (points.empty() || k == 0) return picked;
    std::size_t best = 0;
    for (std::size_t i = 1; i < points.size(); ++i)
        if (better(scalars[i], scalars[best], sense)) best = i;
    picked.push_back(best);
    std::vector<char> used(points.size(), 0);
    used[best] = 1;
    while (picked.size() < k && picked.size() < points.size()) {
        std::size_t winner = points.size();
        double winner_dist = -1.0;
        for (std::size_t i = 0; i < points.size(); ++i) {
            if (used[i]) continue;
            double dmin = std::numeric_limits<double>::infinity();
            for (std::size_t p : picked)
                dmin = std::min(dmin, normalized_distance(space, points[i], points[p]));
            if (dmin > winner_dist) {
                winner_dist = dmin;
                winner = i;
            }
        }
        if (winner == points.size()) break;
        used[winner] = 1;
        picked.push_back(winner);
    }
    return picked;
}

/// Subspace for the next cycle: gamma times the current widths, centered on
/// the best point and clamped inside the original bounds. Returns nullopt
/// when a width would fall below the quantization resolution.
inline std::optional<SearchSpace> shrink_subspace(const SearchSpace& sub, const SearchSpace& original,
                                                  const Point& best, double gamma, int digits = 6) {
    const double resolution = std::pow(10.0, -digits);
    std::vector<double> lo(sub.dim()), hi(sub.dim());
    for (std::size_t i = 0; i < sub.dim(); ++i) {
        const double width = gamma * sub.range(i);
        if (width < resolution * original.range(i)) return std::nullopt;
        double l = best[i] - 0.5 * width;
        if (l < original.lower[i]) l = original.lower[i];
        double u = l + width;
        if (u > original.upper[i]) {
            u = original.upper[i];
            l = u - width;
        }
        lo[i] = l;
        hi[i] = u;
    }
    return SearchSpace(std::move(lo), std::move(hi));
}

}  // namespace detail

/// Surrogate loop: sample a Latin optimal hypercube in the current subspace
/// and evaluate it truly, train the network emulator, search its Pareto front
/// with the genetic algorithm, truly evaluate k predicted-best points, then
/// shrink the subspace around the best true weighted-sum point and repeat.
/// The reported archive contains only truly-evaluated points.
inline RunResult run_loh_ann(const Problem& problem, const SurrogateConfig& cfg,
                             const Scalarizer& scal, const Budget& budget, std::uint64_t seed,
                             bool real_time = false) {
    cfg.validate();
    RunContext ctx(problem, scal, budget, seed, real_time);
    auto rng = ctx.engine(5);
    const SearchSpace& space = problem.space;
    const std::size_t dim = space.dim();
    if (dim > 10)
        std::cerr << "loh_ann: warning: " << dim
                  << " parameters; sampling-based emulation degrades at high dimension\n";
    const std::size_t n = cfg.samples_per_cycle ? static_cast<std::size_t>(cfg.samples_per_cycle)
                                                : 10 * dim;
    if (n < 2 * dim) throw ConfigError("loh_ann: samples_per_cycle must be >= 2*dim");
    const std::size_t k = cfg.predicted_pareto_evals
                              ? static_cast<std::size_t>(cfg.predicted_pareto_evals)
                              : std::max<std::size_t>(2, n / 4);
    if (k > n) throw ConfigError("loh_ann: predicted_pareto_evals must be <= samples_per_cycle");

    AnnConfig ann_cfg;
    ann_cfg.hidden = cfg.hidden_width;
    ann_cfg.epochs = cfg.epochs;
    ann_cfg.learning_rate = cfg.learning_rate;
    ann_cfg.validation_fraction = cfg.validation_fraction;

    std::vector<std::pair<Point, ObjectiveReport>> evaluated;  // all true evaluations
    // A subspace near the quantization floor only holds a handful of distinct
    // configurations, so freshness is best-effort: a clash after many redraws
    // is kept and replayed from the cache instead of spinning forever.
    auto freshen = [&](std::vector<Point> pts, const SearchSpace& sub) {
        std::unordered_set<QuantizedKey, QuantizedKeyHash> batch;
        for (Point& p : pts) {
            int attempts = 0;
            while ((!ctx.is_fresh(p) || !batch.insert(quantize(space, p)).second) &&
                   attempts++ < 200)
                p = uniform_point(rng, sub);
        }
        return pts;
    };

    SearchSpace sub = space;
    std::string reason = kReasonBudget;
    for (int cycle = 0; cycle < cfg.cycles && !ctx.budget_exhausted(); ++cycle) {
        LohDesign design = loh_sample(sub, n, cfg.loh_iters, rng);
        auto recs = ctx.submit(freshen(std::move(design.points), sub));
        for (const auto& r : recs) evaluated.emplace_back(r.point, r.report);
        if (recs.size() < n) break;  // budget died mid-design

        std::vector<std::pair<Point, ObjectiveReport>> training;
        for (const auto& row : evaluated)
            if (sub.contains(row.first)) training.push_back(row);
        const AnnModel model = train_ann(sub, training, ann_cfg, rng);

        // Cheap multi-objective search against the emulator.
        Problem emulated;
        emulated.space = sub;
        emulated.objective_count = problem.objective_count;
        emulated.eval_fn = [&model](const Point& x) { return ann_predict(model, x); };
        emulated.noise_sigma = 0.0;
        emulated.trust_factor = 0.0;
        emulated.cost_seconds = 0.0;
        GedeaConfig search;
        search.population_size = 16;
        Budget search_budget;
        search_budget.max_evaluations = 816;  // 16 + 50 generations of 16
        search_budget.batch_size = 16;
        const RunResult predicted =
            run_gedea(emulated, search, scal, search_budget, mix_seed(seed, 100 + cycle));

        std::vector<Point> front_points;
        std::vector<double> front_scalars;
        for (const auto& rec : predicted.pareto.members()) {
            front_points.push_back(rec.point);
            front_scalars.push_back(rec.scalar);
        }
        std::vector<Point> picks;
        for (std::size_t idx :
             detail::spread_pick(sub, front_points, front_scalars, scal.sense, k))
            picks.push_back(front_points[idx]);
        while (picks.size() < k) picks.push_back(uniform_point(rng, sub));
        recs = ctx.submit(freshen(std::move(picks), sub));
        for (const auto& r : recs) evaluated.emplace_back(r.point, r.report);
        if (recs.size() < k) break;

        if (cycle + 1 == cfg.cycles) {
            reason = kReasonCycles;
            break;
        }
        auto next = detail::shrink_subspace(sub, space, ctx.best()->point, cfg.shrink_factor);
        if (!next) {
            reason = kReasonSubspaceFloor;
            break;
        }
        sub = *next;
    }
    return ctx.finish("loh_ann", "", reason);
}

}  // namespace bbopt

#endif
