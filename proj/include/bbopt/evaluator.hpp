#ifndef BBOPT_EVALUATOR_HPP
#define BBOPT_EVALUATOR_HPP

#include <cmath>
#include <cstdint>
#include <functional>
#include <future>
#include <optional>
#include <unordered_map>
#include <utility>
#include <vector>

#include "bbopt/budget.hpp"
#include "bbopt/core.hpp"
#include "bbopt/objective.hpp"
#include "bbopt/record.hpp"

namespace bbopt {

/// A black-box problem. eval_fn is the deterministic base map and must be
/// safe to call concurrently on distinct inputs; convergence scatter is
/// layered on top as seeded Gaussian noise plus a trust penalty.
struct Problem {
    SearchSpace space;
    int objective_count = 1;
    std::function<ObjectiveReport(const Point&)> eval_fn;
    double noise_sigma = 0.0;
    double trust_factor = 1.0;
    double cost_seconds = 0.0;  // simulated wall cost of one analysis
};

/// Resource accounting for one run.
struct EvalLedger {
    long total_evaluations = 0;
    long total_blocks = 0;
    int batch_size = 1;
};

/// Quantized point key: each coordinate rounded to `digits` decimals in
/// normalized [0,1] coordinates.
using QuantizedKey = std::vector<std::int64_t>;

inline QuantizedKey quantize(const SearchSpace& space, const Point& p, int digits = 6) {
    const double scale = std::pow(10.0, digits);
    QuantizedKey key(p.size());
    for (std::size_t i = 0; i < p.size(); ++i)
        key[i] = static_cast<std::int64_t>(std::llround((p[i] - space.lower[i]) / space.range(i) * scale));
    return key;
}

inline bool quantized_equal(const SearchSpace& space, const Point& a, const Point& b, int digits = 6) {
    return quantize(space, a, digits) == quantize(space, b, digits);
}

struct QuantizedKeyHash {
    std::size_t operator()(const QuantizedKey& k) const {
        std::uint64_t h = 0x9e3779b97f4a7c15ULL;
        for (std::int64_t v : k) h = splitmix64(h ^ static_cast<std::uint64_t>(v));
        return static_cast<std::size_t>(h);
    }
};

/// Remembers the first evaluation of every quantized configuration so equal
/// configurations are never analysed twice.
class DedupeCache {
  public:
    DedupeCache() = default;
    explicit DedupeCache(SearchSpace space, int digits = 6)
        : space_(std::move(space)), digits_(digits) {}

    bool contains(const Point& p) const { return map_.find(quantize(space_, p, digits_)) != map_.end(); }

    const EvaluationRecord* find(const Point& p) const {
        auto it = map_.find(quantize(space_, p, digits_));
        return it == map_.end() ? nullptr : &it->second;
    }

    void store(const EvaluationRecord& rec) { map_.emplace(quantize(space_, rec.point, digits_), rec); }

    std::size_t size() const { return map_.size(); }
    int digits() const { return digits_; }

  private:
    SearchSpace space_;
    int digits_ = 6;
    std::unordered_map<QuantizedKey, EvaluationRecord, QuantizedKeyHash> map_;
};

namespace detail {

/// Noise draws depend only on (noise_seed, eval_index), never on thread order.
inline ObjectiveReport apply_noise(const Problem& problem, ObjectiveReport base, std::uint64_t noise_seed,
                                   long eval_index) {
    if (problem.noise_sigma <= 0.0) return base;
    auto rng = engine_for(noise_seed, static_cast<std::uint64_t>(eval_index));
    std::normal_distribution<double> noise(0.0, problem.noise_sigma);
    double magnitude = 0.0;
    for (double& v : base.values) {
        const double draw = noise(rng);
        v += draw;
        magnitude += std::abs(draw);
    }
    base.trust_penalty += problem.trust_factor * magnitude / static_cast<double>(base.values.size());
    return base;
}

inline EvaluationRecord evaluate_point(const Problem& problem, const Point& p, std::uint64_t noise_seed,
                                       long eval_index, long block_index, const Scalarizer& scal) {
    EvaluationRecord rec;
    rec.point = p;
    rec.report = apply_noise(problem, problem.eval_fn(p), noise_seed, eval_index);
    rec.scalar = scal(rec.report);
    rec.eval_index = eval_index;
    rec.block_index = block_index;
    return rec;
}

}  // namespace detail

/// Evaluates one block of points. Cache hits are returned as the original
/// records; the remaining points run concurrently as one block, which costs
/// one unit of simulated wall time. Results come back in input order.
inline std::vector<EvaluationRecord> evaluate_block(const Problem& problem, const std::vector<Point>& points,
                                                    EvalLedger& ledger, DedupeCache* cache, RunClock& clock,
                                                    std::uint64_t noise_seed, const Scalarizer& scal) {
    if (points.empty()) throw ConfigError("evaluate_block: empty point list");
    if (static_cast<int>(points.size()) > ledger.batch_size)
        throw ConfigError("evaluate_block: block of " + std::to_string(points.size()) +
                          " exceeds batch_size " + std::to_string(ledger.batch_size));
    for (const Point& p : points)
        if (!problem.space.contains(p))
            throw ConfigError("evaluate_block: point outside the search space; clamp first");

    std::vector<EvaluationRecord> out(points.size());
    std::vector<std::size_t> fresh;
    for (std::size_t i = 0; i < points.size(); ++i) {
        if (cache) {
            if (const EvaluationRecord* hit = cache->find(points[i])) {
                out[i] = *hit;
                continue;
            }
        }
        fresh.push_back(i);
    }
    if (fresh.empty()) return out;  // nothing analysed: no block, no time

    const long block_index = ledger.total_blocks + 1;
    if (fresh.size() == 1) {
        const std::size_t i = fresh.front();
        out[i] = detail::evaluate_point(problem, points[i], noise_seed, ledger.total_evaluations + 1,
                                        block_index, scal);
    } else {
        std::vector<std::future<EvaluationRecord>> jobs;
        jobs.reserve(fresh.size());
        for (std::size_t k = 0; k < fresh.size(); ++k) {
            const std::size_t i = fresh[k];
            const long eval_index = ledger.total_evaluations + static_cast<long>(k) + 1;
            jobs.push_back(std::async(std::launch::async, [&, i, eval_index] {
                return detail::evaluate_point(problem, points[i], noise_seed, eval_index, block_index, scal);
            }));
        }
        for (std::size_t k = 0; k < fresh.size(); ++k) out[fresh[k]] = jobs[k].get();
    }

    ledger.total_blocks = block_index;
    ledger.total_evaluations += static_cast<long>(fresh.size());
    clock.advance(problem.cost_seconds);
    const double now = clock.elapsed_seconds();
    for (std::size_t i : fresh) {
        out[i].elapsed_seconds = now;
        if (cache) cache->store(out[i]);
    }
    return out;
}

/// Serial convenience wrapper over evaluate_block.
inline EvaluationRecord evaluate_one(const Problem& problem, const Point& p, EvalLedger& ledger,
                                     DedupeCache* cache, RunClock& clock, std::uint64_t noise_seed,
                                     const Scalarizer& scal) {
    return evaluate_block(problem, {p}, ledger, cache, clock, noise_seed, scal).front();
}

}  // namespace bbopt

#endif
