#ifndef BBOPT_GD_HPP
#define BBOPT_GD_HPP

#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "bbopt/run.hpp"

namespace bbopt {

/// First-order gradient descent with parallel forward finite differences and
/// a parallel two-stage line search. Fully deterministic.
struct GdConfig {
    double fd_step = 1e-4;     // finite-difference step, relative to each dimension's range
    int line_search_grid = 0;  // candidate steps per block; 0 -> batch_size
    double step_growth = 4.0;  // geometric ratio of the candidate step grid
    double min_step = 1e-4;    // smallest candidate step in normalized coordinates
    int refine_rounds = 3;     // fd_step halvings tried after a failed line search

    void validate() const {
        if (fd_step <= 0) throw ConfigError("gd: fd_step must be > 0");
        if (step_growth <= 1) throw ConfigError("gd: step_growth must be > 1");
        if (min_step <= 0) throw ConfigError("gd: min_step must be > 0");
        if (line_search_grid < 0) throw ConfigError("gd: line_search_grid must be >= 0");
    }
};

/// Forward-difference gradient of the scalarized objective, one block of
/// dim evaluations. Points that would leave the upper bound flip to a
/// backward difference with sign correction. Returns nullopt if the budget
/// expired before the block completed.
inline std::optional<std::vector<double>> estimate_gradient(RunContext& ctx, const Point& x, double f_x,
                                                            double fd_step) {
    const SearchSpace& space = ctx.problem().space;
    const std::size_t dim = space.dim();
    std::vector<Point> probes;
    bool any_distinct = false;
    for (std::size_t i = 0; i < dim; ++i) {
        const double step = fd_step * space.range(i);
        Point xp = x;
        if (x[i] + step <= space.upper[i]) {
            xp[i] = x[i] + step;
        } else {  // flip to a backward difference at the upper bound
            xp[i] = x[i] - step;
        }
        xp = space.clamp(xp);
        if (xp[i] != x[i]) any_distinct = true;
        probes.push_back(std::move(xp));
    }
    if (!any_distinct)
        throw std::runtime_error("estimate_gradient: all perturbed points collapse onto x (degenerate geometry)");

    auto records = ctx.submit(probes);
    if (records.size() < dim) return std::nullopt;

    std::vector<double> g(dim, 0.0);
    for (std::size_t i = 0; i < dim; ++i) {
        if (probes[i][i] == x[i]) continue;  // untouchable dimension, zero component
        // dividing by the signed displacement makes forward and backward
        // differences come out with the same orientation
        g[i] = (records[i].scalar - f_x) / (probes[i][i] - x[i]);
    }
    return g;
}

namespace detail {

struct LineSearchOutcome {
    double best_step = 0.0;  // 0 when no candidate improved on f(x)
    std::optional<EvaluationRecord> best;
    bool budget_died = false;
};

inline Point step_along(const SearchSpace& space, const Point& x, const std::vector<double>& unit_dir,
                        double s) {
    Point p(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) p[i] = x[i] + s * unit_dir[i] * space.range(i);
    return space.clamp(p);
}

/// Evaluates a geometric grid of candidate steps, then one refinement block
/// around the best candidate (a finer grid plus the parabola vertex through
/// the best candidate and its grid neighbours). Two blocks at most.
inline LineSearchOutcome line_search(RunContext& ctx, const Point& x, double f_x,
                                     const std::vector<double>& unit_dir, const GdConfig& cfg) {
    const SearchSpace& space = ctx.problem().space;
    const int grid = cfg.line_search_grid > 0 ? cfg.line_search_grid : ctx.budget().batch_size;
    const Sense sense = ctx.sense();

    std::vector<double> steps(grid);
    for (int k = 0; k < grid; ++k) steps[k] = cfg.min_step * std::pow(cfg.step_growth, k);
    std::vector<Point> candidates;
    for (double s : steps) candidates.push_back(step_along(space, x, unit_dir, s));

    LineSearchOutcome out;
    auto stage1 = ctx.submit(candidates);
    if (stage1.size() < candidates.size()) {
        out.budget_died = true;
        // fall through: use whatever came back
    }
    int best_k = -1;
    double best_f = f_x;
    for (std::size_t k = 0; k < stage1.size(); ++k) {
        if (better(stage1[k].scalar, best_f, sense)) {
            best_f = stage1[k].scalar;
            best_k = static_cast<int>(k);
        }
    }
    if (best_k < 0) return out;  // best_step stays 0
    out.best_step = steps[best_k];
    out.best = stage1[best_k];
    if (out.budget_died || ctx.budget_exhausted()) return out;

    // refinement: fine geometric grid spanning one growth factor around the
    // best step, with the parabola vertex replacing the first slot when the
    // three-point fit admits one
    std::vector<double> fine;
    {
        const double s_prev = best_k > 0 ? steps[best_k - 1] : 0.0;
        const double f_prev = best_k > 0 ? stage1[best_k - 1].scalar : f_x;
        if (best_k + 1 < static_cast<int>(stage1.size())) {
            const double s_next = steps[best_k + 1];
            const double f_next = stage1[best_k + 1].scalar;
            if (auto v = parabola_vertex(s_prev, f_prev, steps[best_k], best_f, s_next, f_next, sense)) {
                if (*v > 0.0 && *v >= s_prev && *v <= s_next) fine.push_back(*v);
            }
        }
    }
    for (int j = 0; static_cast<int>(fine.size()) < grid && j < grid; ++j) {
        const double e = -0.9 + 1.8 * j / std::max(1, grid - 1);
        fine.push_back(out.best_step * std::pow(cfg.step_growth, e));
    }
    std::vector<Point> refine;
    for (double s : fine) refine.push_back(step_along(space, x, unit_dir, s));
    auto stage2 = ctx.submit(refine);
    for (std::size_t k = 0; k < stage2.size(); ++k) {
        if (better(stage2[k].scalar, out.best->scalar, sense)) {
            out.best = stage2[k];
            out.best_step = fine[k];
        }
    }
    return out;
}

}  // namespace detail

/// Iterates gradient estimation and line search from the running best until
/// no improvement direction remains (after refining the difference step) or
/// the budget expires.
inline RunResult run_gd(const Problem& problem, const Point& start, const GdConfig& cfg,
                        const Scalarizer& scalarizer, const Budget& budget, std::uint64_t seed = 0,
                        bool real_time = false) {
    cfg.validate();
    RunContext ctx(problem, scalarizer, budget, seed, real_time);
    const SearchSpace& space = problem.space;
    ctx.submit({space.clamp(start)});
    if (!ctx.best()) return ctx.finish("gd", "", kReasonBudget);

    double h = cfg.fd_step;
    int refines_left = cfg.refine_rounds;
    std::string reason = kReasonBudget;

    while (!ctx.budget_exhausted()) {
        const Point x = ctx.best()->point;
        const double f_x = ctx.best()->scalar;

        auto g = estimate_gradient(ctx, x, f_x, h);
        if (!g) break;

        // orient toward improvement in normalized coordinates
        std::vector<double> dir(space.dim(), 0.0);
        double norm = 0.0;
        const double orient = ctx.sense() == Sense::maximize ? 1.0 : -1.0;
        for (std::size_t i = 0; i < space.dim(); ++i) {
            dir[i] = orient * (*g)[i] * space.range(i);
            norm += dir[i] * dir[i];
        }
        norm = std::sqrt(norm);

        bool improved = false;
        if (norm > 0.0) {
            for (double& d : dir) d /= norm;
            auto ls = detail::line_search(ctx, x, f_x, dir, cfg);
            if (ls.budget_died) break;
            improved = ls.best_step > 0.0;
        }
        if (improved) {
            refines_left = cfg.refine_rounds;
            continue;
        }
        if (refines_left > 0) {  // flat or failing at this resolution: sharpen the probe
            --refines_left;
            h *= 0.5;
            continue;
        }
        reason = kReasonNoImprovement;
        break;
    }
    return ctx.finish("gd", "", reason);
}

}  // namespace bbopt

#endif
