#ifndef BBOPT_ASBEC_HPP
#define BBOPT_ASBEC_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <deque>
#include <optional>
#include <random>
#include <unordered_set>
#include <vector>

#include "bbopt/accelerators.hpp"
#include "bbopt/core.hpp"
#include "bbopt/run.hpp"

namespace bbopt {

struct AsbecConfig {
    int colony_size = 0;        // food sources; 0 resolves to batch_size
    int abandonment_limit = 0;  // trials before a source is abandoned; 0 -> colony_size * dim
    double step_sigma = 0.05;   // random-stage step scale, fraction of each range
    int onlooker_count = 0;     // proposals per onlooker phase; 0 resolves to batch_size
    int scout_candidates = 64;  // uniform candidates scored per scout repositioning
    double trend_beta = 0.25;   // weight of the nectar-trend bonus in scout scoring
    int nectar_capacity = 5;    // recent scalar values kept per source

    void validate() const {
        if (colony_size != 0 && colony_size < 2) throw ConfigError("asbec: colony_size must be >= 2");
        if (abandonment_limit < 0) throw ConfigError("asbec: abandonment_limit must be >= 1");
        if (step_sigma <= 0) throw ConfigError("asbec: step_sigma must be positive");
        if (onlooker_count < 0) throw ConfigError("asbec: onlooker_count must be >= 1");
        if (scout_candidates < 1) throw ConfigError("asbec: scout_candidates must be >= 1");
        if (trend_beta < 0) throw ConfigError("asbec: trend_beta must be >= 0");
        if (nectar_capacity < 2) throw ConfigError("asbec: nectar_capacity must be >= 2");
    }
};

/// Which stage of the three-stage move a source will try next.
enum class BeeStage { random_step, mirror, vertex };

struct FoodSource {
    Point position;
    EvaluationRecord record;
    int trials_without_improvement = 0;
    BeeStage stage = BeeStage::random_step;
    Point pending_x1;  // last failed random-stage proposal
    double pending_f1 = 0.0;
    Point pending_x2;  // last failed mirror proposal
    double pending_f2 = 0.0;
    std::deque<double> nectar_history;  // recent accepted scalars, newest last
};

/// Rank-proportional source selection: best rank gets weight n, worst gets 1,
/// ties share the average weight of their rank group (equal values are
/// selected uniformly).
inline std::size_t onlooker_select(const std::vector<double>& scalars, Sense sense,
                                   std::mt19937_64& rng) {
    if (scalars.empty()) throw ConfigError("onlooker_select: empty colony");
    const std::size_t n = scalars.size();
    std::vector<std::size_t> order(n);
    for (std::size_t i = 0; i < n; ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return better(scalars[a], scalars[b], sense); });
    std::vector<double> weights(n);
    for (std::size_t r = 0; r < n;) {
        std::size_t end = r + 1;
        while (end < n && scalars[order[end]] == scalars[order[r]]) ++end;
        double avg = 0.0;
        for (std::size_t k = r; k < end; ++k) avg += static_cast<double>(n - k);
        avg /= static_cast<double>(end - r);
        for (std::size_t k = r; k < end; ++k) weights[order[k]] = avg;
        r = end;
    }
    std::discrete_distribution<std::size_t> pick(weights.begin(), weights.end());
    return pick(rng);
}

/// Scores candidates by maximin normalized distance to the live sources plus
/// a proximity bonus toward trend_anchor (the source with the best recent
/// nectar improvement), returning the index of the winner; ties keep the
/// lowest index.
inline std::size_t scout_pick(const SearchSpace& space, const std::vector<Point>& sources,
                              const std::vector<Point>& candidates, const Point* trend_anchor,
                              double beta) {
    if (candidates.empty()) throw ConfigError("scout_pick: no candidates");
    std::size_t best = 0;
    double best_score = -1.0;
    for (std::size_t c = 0; c < candidates.size(); ++c) {
        double dmin = std::numeric_limits<double>::infinity();
        for (const Point& s : sources)
            dmin = std::min(dmin, normalized_distance(space, candidates[c], s));
        if (sources.empty()) dmin = 0.0;
        double score = dmin;
        if (trend_anchor)
            score += beta / (1.0 + normalized_distance(space, candidates[c], *trend_anchor));
        if (score > best_score) {
            best_score = score;
            best = c;
        }
    }
    return best;
}

namespace detail {

struct SuperBeeProposal {
    Point point;
    BeeStage stage_used = BeeStage::random_step;
};

/// ABC-style differential random step around the source, biased toward or
/// away from the partner, with a Gaussian exploration component.
inline Point differential_step(const SearchSpace& working, const Point& position,
                               const Point& partner, double step_sigma, std::mt19937_64& rng) {
    Point out(position.size());
    std::uniform_real_distribution<double> phi(-1.0, 1.0);
    for (std::size_t i = 0; i < position.size(); ++i)
        out[i] = position[i] + gaussian(rng, 0.0, step_sigma * working.range(i)) +
                 phi(rng) * (position[i] - partner[i]);
    return working.clamp(out);
}

/// One proposal following the source's pending stage: fresh differential step,
/// mirror of the failed step, or the parabola vertex along the failed chord.
/// A missing vertex falls back to a fresh random-stage step.
inline SuperBeeProposal super_bee_move(const FoodSource& source, const Point& partner,
                                       const SearchSpace& working, const SearchSpace& original,
                                       const AsbecConfig& cfg, Sense sense, std::mt19937_64& rng) {
    constexpr double kParabolaClip = 10.0;  // same clip as the walk the move inherits from
    if (source.stage == BeeStage::mirror) {
        Point x2(source.position.size());
        for (std::size_t i = 0; i < x2.size(); ++i)
            x2[i] = 2.0 * source.position[i] - source.pending_x1[i];
        return {working.clamp(x2), BeeStage::mirror};
    }
    if (source.stage == BeeStage::vertex) {
        double uu = 0.0, s2 = 0.0;
        for (std::size_t i = 0; i < source.position.size(); ++i) {
            const double di = (source.pending_x1[i] - source.position[i]) / original.range(i);
            uu += di * di;
            s2 += di * (source.pending_x2[i] - source.position[i]) / original.range(i);
        }
        if (uu > 0.0) {
            s2 /= uu;
            if (s2 != 0.0 && s2 != 1.0) {
                auto vertex = parabola_vertex(s2, source.pending_f2, 0.0, source.record.scalar, 1.0,
                                              source.pending_f1, sense);
                if (vertex) {
                    double sv = *vertex;
                    if (std::abs(sv) > kParabolaClip) sv = std::copysign(kParabolaClip, sv);
                    Point x3(source.position.size());
                    for (std::size_t i = 0; i < x3.size(); ++i)
                        x3[i] = source.position[i] + sv * (source.pending_x1[i] - source.position[i]);
                    return {working.clamp(x3), BeeStage::vertex};
                }
            }
        }
    }
    return {differential_step(working, source.position, partner, cfg.step_sigma, rng),
            BeeStage::random_step};
}

}  // namespace detail

/// Artificial bee colony whose neighbor move is the three-stage semi-random
/// walk step ("super-bee"), with rank-proportional onlookers, nectar-trend +
/// space-filling scouts, duplicate avoidance, and block-parallel phases.
/// An abandoned source's next employed proposal is its scout repositioning,
/// keeping every employed block exactly colony-wide.
inline RunResult run_asbec(const Problem& problem, const AsbecConfig& cfg, const Scalarizer& scal,
                           const Budget& budget, std::uint64_t seed,
                           const AcceleratorConfig* accel = nullptr, const Point* start = nullptr,
                           bool real_time = false) {
    cfg.validate();
    if (accel) accel->validate();
    RunContext ctx(problem, scal, budget, seed, real_time);
    auto rng = ctx.engine(3);
    const SearchSpace& space = problem.space;
    const std::size_t dim = space.dim();
    const int colony_size = cfg.colony_size ? cfg.colony_size : budget.batch_size;
    if (colony_size < 2) throw ConfigError("asbec: colony_size must be >= 2 (set it explicitly for batch 1)");
    const int onlookers = cfg.onlooker_count ? cfg.onlooker_count : budget.batch_size;
    const int limit = cfg.abandonment_limit ? cfg.abandonment_limit
                                            : colony_size * static_cast<int>(dim);
    const double p_mod = accel ? accel->resolved_p_mod(dim) : 0.0;

    SearchSpace working = space;
    TrendHistory history(accel ? static_cast<std::size_t>(accel->history_capacity) : 5, scal.sense);
    long evals_at_last_improvement = 0;

    // Per-iteration proposal bookkeeping: every evaluated point must be fresh
    // against the cache and against this iteration's other proposals.
    std::unordered_set<QuantizedKey, QuantizedKeyHash> proposed;
    auto usable = [&](const Point& p) {
        return ctx.is_fresh(p) && !proposed.count(quantize(space, p));
    };
    auto claim = [&](const Point& p) { proposed.insert(quantize(space, p)); };
    // Replaces duplicate proposals with fresh draws so blocks stay full.
    auto freshen = [&](Point p, const Point& anchor) {
        for (int attempt = 0; attempt < 24 && !usable(p); ++attempt) {
            if (attempt < 12) {
                Point step(anchor.size());
                for (std::size_t i = 0; i < dim; ++i)
                    step[i] = anchor[i] + gaussian(rng, 0.0, cfg.step_sigma * working.range(i));
                p = working.clamp(step);
            } else {
                p = uniform_point(rng, working);
            }
        }
        claim(p);
        return p;
    };

    std::vector<FoodSource> colony;
    {
        std::vector<Point> init;
        init.reserve(colony_size);
        for (int i = 0; i < colony_size; ++i) {
            Point p;
            if (start && i == 0) {
                p = space.clamp(*start);
            } else if (start && i < (colony_size + 1) / 2) {
                Point local(dim);
                for (std::size_t d = 0; d < dim; ++d)
                    local[d] = (*start)[d] + gaussian(rng, 0.0, cfg.step_sigma * space.range(d));
                p = space.clamp(local);
            } else {
                p = uniform_point(rng, space);
            }
            while (!usable(p)) p = uniform_point(rng, space);
            claim(p);
            init.push_back(std::move(p));
        }
        auto recs = ctx.submit(init);
        for (std::size_t k = 0; k < recs.size(); ++k) {
            FoodSource s;
            s.position = recs[k].point;
            s.record = recs[k];
            s.nectar_history.push_back(recs[k].scalar);
            colony.push_back(std::move(s));
        }
    }
    if (ctx.best()) history.push(ctx.best()->point, ctx.best()->scalar);

    enum class Kind { employed, scout, onlooker };
    struct Meta {
        std::size_t source;
        Kind kind;
        BeeStage stage_used;
    };

    auto source_scalars = [&] {
        std::vector<double> s(colony.size());
        for (std::size_t i = 0; i < colony.size(); ++i) s[i] = colony[i].record.scalar;
        return s;
    };
    auto push_nectar = [&](FoodSource& s, double v) {
        s.nectar_history.push_back(v);
        while (s.nectar_history.size() > static_cast<std::size_t>(cfg.nectar_capacity))
            s.nectar_history.pop_front();
    };
    auto accept_source = [&](FoodSource& s, const EvaluationRecord& rec) {
        s.position = rec.point;
        s.record = rec;
        s.trials_without_improvement = 0;
        s.stage = BeeStage::random_step;
        push_nectar(s, rec.scalar);
    };
    // The live source whose recent nectar history improved the most.
    auto trend_anchor = [&]() -> const Point* {
        const Point* anchor = nullptr;
        double best_gain = 0.0;
        for (const FoodSource& s : colony) {
            if (s.nectar_history.size() < 2) continue;
            const double first = s.nectar_history.front(), last = s.nectar_history.back();
            if (!better(last, first, scal.sense)) continue;
            const double gain = std::abs(last - first);
            if (gain > best_gain) {
                best_gain = gain;
                anchor = &s.position;
            }
        }
        return anchor;
    };
    auto note_global = [&] {
        if (ctx.best() && (history.size() == 0 ||
                           better(ctx.best()->scalar, history.latest().scalar, scal.sense))) {
            history.push(ctx.best()->point, ctx.best()->scalar);
            evals_at_last_improvement = ctx.ledger().total_evaluations;
        }
    };

    while (!ctx.budget_exhausted() && colony.size() >= 2) {
        proposed.clear();
        if (accel && ctx.ledger().total_evaluations - evals_at_last_improvement >=
                         accel->stagnation_window) {
            evals_at_last_improvement = ctx.ledger().total_evaluations;
            if (auto shrunk = range_resize_following(working, ctx.best()->point,
                                                     accel->resize_factor, space))
                working = *shrunk;
        }

        // Employed phase: one proposal per source; abandoned sources are
        // repositioned by the scout rule inside the same block.
        std::vector<Point> proposals;
        std::vector<Meta> metas;
        std::uniform_int_distribution<std::size_t> pick_other(0, colony.size() - 2);
        for (std::size_t i = 0; i < colony.size(); ++i) {
            if (colony[i].trials_without_improvement >= limit) {
                std::vector<Point> candidates(static_cast<std::size_t>(cfg.scout_candidates));
                for (auto& c : candidates) c = uniform_point(rng, working);
                std::vector<Point> positions;
                for (const auto& s : colony) positions.push_back(s.position);
                Point p = candidates[scout_pick(space, positions, candidates, trend_anchor(),
                                                cfg.trend_beta)];
                proposals.push_back(freshen(std::move(p), ctx.best()->point));
                metas.push_back({i, Kind::scout, BeeStage::random_step});
                continue;
            }
            std::size_t j = pick_other(rng);
            if (j >= i) ++j;
            auto move = detail::super_bee_move(colony[i], colony[j].position, working, space, cfg,
                                               scal.sense, rng);
            Point p = std::move(move.point);
            if (accel && move.stage_used == BeeStage::random_step)
                p = working.clamp(maybe_modify(colony[i].position, p_mod, rng,
                                               [&](std::size_t d, double v) {
                                                   return v + (p[d] - colony[i].position[d]);
                                               }));
            if (!usable(p)) move.stage_used = BeeStage::random_step;
            proposals.push_back(freshen(std::move(p), colony[i].position));
            metas.push_back({i, Kind::employed, move.stage_used});
        }
        auto recs = ctx.submit(proposals);
        for (std::size_t k = 0; k < recs.size(); ++k) {
            FoodSource& s = colony[metas[k].source];
            if (metas[k].kind == Kind::scout) {
                accept_source(s, recs[k]);  // unconditional: abandonment resets the source
                s.nectar_history.clear();
                push_nectar(s, recs[k].scalar);
                continue;
            }
            if (better(recs[k].scalar, s.record.scalar, scal.sense)) {
                accept_source(s, recs[k]);
            } else {
                ++s.trials_without_improvement;
                switch (metas[k].stage_used) {
                    case BeeStage::random_step:
                        s.pending_x1 = recs[k].point;
                        s.pending_f1 = recs[k].scalar;
                        s.stage = BeeStage::mirror;
                        break;
                    case BeeStage::mirror:
                        s.pending_x2 = recs[k].point;
                        s.pending_f2 = recs[k].scalar;
                        s.stage = BeeStage::vertex;
                        break;
                    case BeeStage::vertex:
                        s.stage = BeeStage::random_step;
                        break;
                }
            }
        }
        note_global();
        if (recs.size() < proposals.size() || ctx.budget_exhausted()) break;

        // Onlooker phase: rank-proportional reinforcement of good sources. The
        // accelerator's trend candidate replaces the first proposal when available.
        proposals.clear();
        metas.clear();
        const auto scalars = source_scalars();
        for (int t = 0; t < onlookers; ++t) {
            const std::size_t i = onlooker_select(scalars, scal.sense, rng);
            Point p;
            bool from_trend = false;
            if (t == 0 && accel) {
                if (auto guess = trend_predict(space, history); guess && usable(*guess)) {
                    p = *guess;
                    from_trend = true;
                }
            }
            if (!from_trend) {
                std::size_t j = pick_other(rng);
                if (j >= i) ++j;
                p = detail::differential_step(working, colony[i].position, colony[j].position,
                                              cfg.step_sigma, rng);
            }
            proposals.push_back(freshen(std::move(p), colony[i].position));
            metas.push_back({i, Kind::onlooker, BeeStage::random_step});
        }
        recs = ctx.submit(proposals);
        for (std::size_t k = 0; k < recs.size(); ++k) {
            FoodSource& s = colony[metas[k].source];
            if (better(recs[k].scalar, s.record.scalar, scal.sense))
                accept_source(s, recs[k]);
            else
                ++s.trials_without_improvement;
        }
        note_global();
        if (recs.size() < proposals.size()) break;
    }
    return ctx.finish("asbec", "", kReasonBudget);
}

}  // namespace bbopt

#endif
