#ifndef BBOPT_OBJECTIVE_HPP
#define BBOPT_OBJECTIVE_HPP

#include <cstddef>
#include <limits>
#include <string>
#include <vector>

#include "bbopt/core.hpp"

namespace bbopt {

/// Result of one black-box evaluation: objective values plus a convergence
/// penalty that measures how little the evaluation should be trusted.
struct ObjectiveReport {
    std::vector<double> values;
    double trust_penalty = 0.0;
};

/// Strictly better in the configured sense.
inline bool better(double a, double b, Sense sense) {
    return sense == Sense::maximize ? a > b : a < b;
}

/// Weighted-sum scalarization. The trust penalty always worsens the scalar.
struct Scalarizer {
    std::vector<double> weights;
    Sense sense = Sense::minimize;
    double trust_weight = 0.0;

    double operator()(const ObjectiveReport& r) const {
        if (weights.size() != r.values.size())
            throw ConfigError("scalarize: " + std::to_string(weights.size()) + " weights vs " +
                              std::to_string(r.values.size()) + " objective values");
        double s = 0.0;
        for (std::size_t i = 0; i < weights.size(); ++i) s += weights[i] * r.values[i];
        const double penalty = trust_weight * r.trust_penalty;
        return sense == Sense::maximize ? s - penalty : s + penalty;
    }

    bool improves(double candidate, double incumbent) const { return better(candidate, incumbent, sense); }

    double worst() const {
        return sense == Sense::maximize ? -std::numeric_limits<double>::infinity()
                                        : std::numeric_limits<double>::infinity();
    }
};

/// Pareto dominance over objective values; the trust penalty is excluded.
inline bool dominates(const ObjectiveReport& a, const ObjectiveReport& b, Sense sense) {
    if (a.values.size() != b.values.size())
        throw ConfigError("dominates: objective counts differ");
    bool strictly = false;
    for (std::size_t i = 0; i < a.values.size(); ++i) {
        const double ai = a.values[i], bi = b.values[i];
        if (sense == Sense::maximize) {
            if (ai < bi) return false;
            if (ai > bi) strictly = true;
        } else {
            if (ai > bi) return false;
            if (ai < bi) strictly = true;
        }
    }
    return strictly;
}

/// 1-based rank per individual: rank 1 is the non-dominated set, rank k the
/// set that becomes non-dominated once ranks < k are removed.
inline std::vector<int> non_dominated_sort(const std::vector<ObjectiveReport>& pop, Sense sense) {
    const std::size_t n = pop.size();
    if (n == 0) throw ConfigError("non_dominated_sort: empty population");
    std::vector<int> rank(n, 0);
    std::vector<std::size_t> alive(n);
    for (std::size_t i = 0; i < n; ++i) alive[i] = i;
    int current = 1;
    while (!alive.empty()) {
        std::vector<std::size_t> front, rest;
        for (std::size_t i : alive) {
            bool dominated = false;
            for (std::size_t j : alive) {
                if (i != j && dominates(pop[j], pop[i], sense)) {
                    dominated = true;
                    break;
                }
            }
            (dominated ? rest : front).push_back(i);
        }
        for (std::size_t i : front) rank[i] = current;
        alive = std::move(rest);
        ++current;
    }
    return rank;
}

}  // namespace bbopt

#endif
