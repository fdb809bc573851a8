#ifndef BBOPT_IRW_HPP
#define BBOPT_IRW_HPP

#include <cmath>
#include <cstddef>
#include <optional>
#include <random>
#include <utility>

#include "bbopt/accelerators.hpp"
#include "bbopt/core.hpp"
#include "bbopt/run.hpp"

namespace bbopt {

struct IrwConfig {
    double step_sigma = 0.05;   // stddev of the random step, as a fraction of each range
    double parabola_clip = 10;  // max vertex distance in units of the current step length

    void validate() const {
        if (step_sigma <= 0) throw ConfigError("irw: step_sigma must be positive");
        if (parabola_clip <= 0) throw ConfigError("irw: parabola_clip must be positive");
    }
};

namespace detail {

/// Gaussian step from x, per-dimension stddev step_sigma * range, clamped.
inline Point random_step(const SearchSpace& space, const Point& x, double step_sigma,
                         std::mt19937_64& rng) {
    Point out(x.size());
    for (std::size_t i = 0; i < x.size(); ++i)
        out[i] = x[i] + gaussian(rng, 0.0, step_sigma * space.range(i));
    return space.clamp(out);
}

}  // namespace detail

/// Improved random walk: a random step, its mirror image through the current
/// best, and a parabolic interpolation along the chord, in that order, moving
/// on as soon as one of the three improves. Strictly sequential (batch 1).
inline RunResult run_irw(const Problem& problem, const Point& start, const IrwConfig& cfg,
                         const Scalarizer& scal, const Budget& budget, std::uint64_t seed,
                         const AcceleratorConfig* accel = nullptr, bool real_time = false) {
    cfg.validate();
    if (accel) accel->validate();
    if (budget.batch_size != 1)
        throw ConfigError("irw: batch_size must be 1 (the walk is inherently sequential)");
    RunContext ctx(problem, scal, budget, seed, real_time);
    auto rng = ctx.engine(2);
    const SearchSpace& space = problem.space;
    const double p_mod = accel ? accel->resolved_p_mod(space.dim()) : 0.0;

    SearchSpace working = space;
    TrendHistory history(accel ? static_cast<std::size_t>(accel->history_capacity) : 5, scal.sense);
    int improvements_since_injection = 0;
    long evals_at_last_improvement = 0;

    ctx.submit({space.clamp(start)});
    if (ctx.best()) history.push(ctx.best()->point, ctx.best()->scalar);

    auto note_improvement = [&](double before) {
        if (!ctx.best() || !better(ctx.best()->scalar, before, scal.sense)) return false;
        history.push(ctx.best()->point, ctx.best()->scalar);
        ++improvements_since_injection;
        evals_at_last_improvement = ctx.ledger().total_evaluations;
        return true;
    };
    // Evaluates one point; first: whether it improved the best, second: its scalar.
    auto probe = [&](const Point& p) -> std::optional<std::pair<bool, double>> {
        const double before = ctx.best()->scalar;
        auto recs = ctx.submit({p});
        if (recs.empty()) return std::nullopt;
        return std::make_pair(note_improvement(before), recs.front().scalar);
    };

    while (!ctx.budget_exhausted() && ctx.best()) {
        if (accel && improvements_since_injection >= accel->injection_period) {
            improvements_since_injection = 0;
            if (auto guess = trend_predict(space, history); guess && ctx.is_fresh(*guess)) {
                probe(*guess);
                continue;
            }
        }
        if (accel && ctx.ledger().total_evaluations - evals_at_last_improvement >=
                         accel->stagnation_window) {
            evals_at_last_improvement = ctx.ledger().total_evaluations;
            if (auto shrunk = range_resize_following(working, ctx.best()->point,
                                                     accel->resize_factor, space))
                working = *shrunk;
        }

        const Point anchor = ctx.best()->point;
        const double f_anchor = ctx.best()->scalar;

        Point x1;
        bool fresh = false;
        for (int attempt = 0; attempt < 16 && !fresh; ++attempt) {
            if (accel)
                x1 = working.clamp(maybe_modify(anchor, p_mod, rng, [&](std::size_t i, double v) {
                    return v + gaussian(rng, 0.0, cfg.step_sigma * working.range(i));
                }));
            else
                x1 = detail::random_step(working, anchor, cfg.step_sigma, rng);
            fresh = ctx.is_fresh(x1);
        }
        if (!fresh) continue;
        auto r1 = probe(x1);
        if (!r1) break;
        if (r1->first) continue;
        const double f1 = r1->second;

        // A cached mirror costs nothing and still supplies the third ordinate.
        Point x2(anchor.size());
        for (std::size_t i = 0; i < anchor.size(); ++i) x2[i] = 2.0 * anchor[i] - x1[i];
        x2 = working.clamp(x2);
        auto r2 = probe(x2);
        if (!r2) break;
        if (r2->first) continue;
        const double f2 = r2->second;

        // Chord parameterization: s = 0 at the anchor, s = 1 at x1; project the
        // clamped mirror onto the chord for its own coordinate.
        double uu = 0.0, s2 = 0.0;
        for (std::size_t i = 0; i < anchor.size(); ++i) {
            const double di = (x1[i] - anchor[i]) / space.range(i);
            uu += di * di;
            s2 += di * (x2[i] - anchor[i]) / space.range(i);
        }
        if (uu <= 0.0) continue;
        s2 /= uu;
        if (s2 == 0.0 || s2 == 1.0) continue;
        auto vertex = parabola_vertex(s2, f2, 0.0, f_anchor, 1.0, f1, scal.sense);
        if (!vertex) continue;
        double sv = *vertex;
        if (std::abs(sv) > cfg.parabola_clip) sv = std::copysign(cfg.parabola_clip, sv);
        Point x3(anchor.size());
        for (std::size_t i = 0; i < anchor.size(); ++i) x3[i] = anchor[i] + sv * (x1[i] - anchor[i]);
        x3 = working.clamp(x3);
        if (!ctx.is_fresh(x3)) continue;
        probe(x3);
    }
    return ctx.finish("irw", "", kReasonBudget);
}

}  // namespace bbopt

#endif
