#ifndef BBOPT_RUN_HPP
#define BBOPT_RUN_HPP

#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "bbopt/budget.hpp"
#include "bbopt/evaluator.hpp"
#include "bbopt/record.hpp"

namespace bbopt {

struct TrajectoryPoint {
    double elapsed_seconds = 0.0;
    long eval_index = 0;
    double best_scalar = 0.0;
};

/// Everything one algorithm run produces.
struct RunResult {
    std::string algorithm;
    std::string benchmark;
    std::uint64_t seed = 0;
    std::vector<TrajectoryPoint> trajectory;
    EvaluationRecord final_best;
    EvalLedger ledger;
    ParetoArchive pareto;
    std::string termination_reason;
    double elapsed_seconds = 0.0;
    int objective_count = 1;
};

inline constexpr const char* kReasonBudget = "budget exhausted";
inline constexpr const char* kReasonNoImprovement = "no improvement direction";
inline constexpr const char* kReasonGenerations = "generation limit";
inline constexpr const char* kReasonSubspaceFloor = "subspace below quantization width";
inline constexpr const char* kReasonCycles = "cycle limit";

/// Shared run bookkeeping: budget checks, block submission trimmed to the
/// remaining evaluation budget, best-so-far trajectory and Pareto archive.
/// Single-owner; only the evaluation of one block is concurrent.
class RunContext {
  public:
    RunContext(const Problem& problem, Scalarizer scalarizer, Budget budget, std::uint64_t seed,
               bool real_time = false, bool use_cache = true)
        : problem_(problem),
          scalarizer_(std::move(scalarizer)),
          budget_(std::move(budget)),
          seed_(seed),
          noise_seed_(mix_seed(seed, 1)),
          clock_(real_time),
          archive_(scalarizer_.sense) {
        budget_.validate();
        if (static_cast<int>(scalarizer_.weights.size()) != problem.objective_count)
            throw ConfigError("RunContext: scalarizer weight count does not match objective count");
        ledger_.batch_size = budget_.batch_size;
        if (use_cache) cache_.emplace(problem.space);
    }

    const Problem& problem() const { return problem_; }
    const Scalarizer& scalarizer() const { return scalarizer_; }
    const Budget& budget() const { return budget_; }
    std::uint64_t seed() const { return seed_; }
    const EvalLedger& ledger() const { return ledger_; }
    const RunClock& clock() const { return clock_; }
    Sense sense() const { return scalarizer_.sense; }

    long remaining_evaluations() const {
        if (!budget_.max_evaluations) return std::numeric_limits<long>::max();
        return *budget_.max_evaluations - ledger_.total_evaluations;
    }

    bool budget_exhausted() const {
        if (remaining_evaluations() <= 0) return true;
        if (budget_.max_seconds && clock_.elapsed_seconds() >= *budget_.max_seconds) return true;
        return false;
    }

    /// True when the point's quantized configuration was not analysed yet.
    bool is_fresh(const Point& p) const { return !cache_ || !cache_->contains(p); }

    std::mt19937_64 engine(std::uint64_t stream) const { return engine_for(seed_, stream); }

    /// Evaluates points in blocks of at most batch_size, trimming to the
    /// remaining evaluation budget. A block in flight when a time budget
    /// expires still completes. Returns the records obtained (possibly fewer
    /// than requested when the budget ran out).
    std::vector<EvaluationRecord> submit(const std::vector<Point>& points) {
        std::vector<EvaluationRecord> results;
        std::size_t next = 0;
        while (next < points.size() && !budget_exhausted()) {
            const long remaining = remaining_evaluations();
            std::size_t width = std::min<std::size_t>(points.size() - next,
                                                      static_cast<std::size_t>(budget_.batch_size));
            if (remaining < static_cast<long>(width)) width = static_cast<std::size_t>(remaining);
            std::vector<Point> block(points.begin() + next, points.begin() + next + width);
            const long before = ledger_.total_evaluations;
            auto recs = evaluate_block(problem_, block, ledger_, cache_ ? &*cache_ : nullptr, clock_,
                                       noise_seed_, scalarizer_);
            for (auto& rec : recs) {
                if (rec.eval_index > before) {  // fresh, not a cache hit
                    archive_.insert(rec);
                    note_candidate(rec);
                }
                results.push_back(rec);
            }
            next += width;
        }
        return results;
    }

    const std::optional<EvaluationRecord>& best() const { return best_; }
    double best_scalar() const { return best_ ? best_->scalar : scalarizer_.worst(); }
    const std::vector<TrajectoryPoint>& trajectory() const { return trajectory_; }
    const ParetoArchive& archive() const { return archive_; }
    const DedupeCache* cache() const { return cache_ ? &*cache_ : nullptr; }

    RunResult finish(std::string algorithm, std::string benchmark, std::string reason) const {
        RunResult r;
        r.algorithm = std::move(algorithm);
        r.benchmark = std::move(benchmark);
        r.seed = seed_;
        r.trajectory = trajectory_;
        if (best_) r.final_best = *best_;
        r.ledger = ledger_;
        r.pareto = archive_;
        r.termination_reason = std::move(reason);
        r.elapsed_seconds = clock_.elapsed_seconds();
        r.objective_count = problem_.objective_count;
        return r;
    }

  private:
    void note_candidate(const EvaluationRecord& rec) {
        if (!best_ || scalarizer_.improves(rec.scalar, best_->scalar)) {
            best_ = rec;
            trajectory_.push_back({rec.elapsed_seconds, rec.eval_index, rec.scalar});
        }
    }

    const Problem& problem_;
    Scalarizer scalarizer_;
    Budget budget_;
    std::uint64_t seed_;
    std::uint64_t noise_seed_;
    RunClock clock_;
    EvalLedger ledger_;
    std::optional<DedupeCache> cache_;
    ParetoArchive archive_;
    std::optional<EvaluationRecord> best_;
    std::vector<TrajectoryPoint> trajectory_;
};

}  // namespace bbopt

#endif
