#ifndef BBOPT_ACCELERATORS_HPP
#define BBOPT_ACCELERATORS_HPP

#include <cmath>
#include <deque>
#include <optional>
#include <random>

#include "bbopt/core.hpp"
#include "bbopt/objective.hpp"

namespace bbopt {

/// Cross-cutting acceleration knobs for the path-based algorithms.
struct AcceleratorConfig {
    int history_capacity = 5;                // best-solution history length
    int injection_period = 5;                // accepted improvements between trend injections
    double modification_probability = 0.0;   // per-dimension; 0 resolves to max(0.5, 1/dim)
    int stagnation_window = 20;              // evaluations without improvement before a range resize
    double resize_factor = 0.7;

    void validate() const {
        if (history_capacity < 2) throw ConfigError("accel: history_capacity must be >= 2");
        if (injection_period < 1) throw ConfigError("accel: injection_period must be >= 1");
        if (modification_probability < 0 || modification_probability > 1)
            throw ConfigError("accel: modification_probability must be in [0,1]");
        if (stagnation_window < 1) throw ConfigError("accel: stagnation_window must be >= 1");
        if (resize_factor <= 0 || resize_factor > 1)
            throw ConfigError("accel: resize_factor must be in (0,1]");
    }

    double resolved_p_mod(std::size_t dim) const {
        if (modification_probability > 0) return modification_probability;
        return std::max(0.5, 1.0 / static_cast<double>(dim));
    }
};

/// Ordered history of the successive accepted bests, strictly improving.
class TrendHistory {
  public:
    struct Entry {
        Point point;
        double scalar;
    };

    explicit TrendHistory(std::size_t capacity = 5, Sense sense = Sense::minimize)
        : capacity_(capacity), sense_(sense) {}

    /// Accepts only strict improvements over the latest entry.
    void push(Point p, double scalar) {
        if (!entries_.empty() && !better(scalar, entries_.back().scalar, sense_)) return;
        entries_.push_back({std::move(p), scalar});
        while (entries_.size() > capacity_) entries_.pop_front();
    }

    std::size_t size() const { return entries_.size(); }
    const Entry& operator[](std::size_t i) const { return entries_[i]; }
    const Entry& latest() const { return entries_.back(); }
    Sense sense() const { return sense_; }

  private:
    std::size_t capacity_;
    Sense sense_;
    std::deque<Entry> entries_;
};

/// Weighted average of the last improvement directions, weights combining
/// improvement quality and proximity to the current best. Returns nullopt
/// with fewer than two history entries.
inline std::optional<Point> trend_predict(const SearchSpace& space, const TrendHistory& history) {
    const std::size_t n = history.size();
    if (n < 2) return std::nullopt;
    const Point& latest = history.latest().point;
    const std::size_t dim = latest.size();

    double largest = 0.0;
    for (std::size_t k = 1; k < n; ++k)
        largest = std::max(largest, std::abs(history[k].scalar - history[k - 1].scalar));
    if (largest <= 0.0) return std::nullopt;

    Point blended(dim, 0.0);
    double weight_sum = 0.0;
    for (std::size_t k = 1; k < n; ++k) {
        const double quality = std::abs(history[k].scalar - history[k - 1].scalar) / largest;
        const double proximity = 1.0 / (1.0 + normalized_distance(space, latest, history[k].point));
        const double w = quality * proximity;
        for (std::size_t i = 0; i < dim; ++i)
            blended[i] += w * (history[k].point[i] - history[k - 1].point[i]);
        weight_sum += w;
    }
    if (weight_sum <= 0.0) return std::nullopt;
    Point prediction(dim);
    for (std::size_t i = 0; i < dim; ++i) prediction[i] = latest[i] + blended[i] / weight_sum;
    return space.clamp(prediction);
}

/// Perturbs each coordinate with independent probability p_mod, guaranteeing
/// at least one perturbed coordinate. perturb(i, x_i) produces the new value.
template <class PerturbFn>
Point maybe_modify(const Point& x, double p_mod, std::mt19937_64& rng, PerturbFn&& perturb) {
    std::vector<char> mask(x.size(), 0);
    if (p_mod <= 0.0) {
        mask[std::uniform_int_distribution<std::size_t>(0, x.size() - 1)(rng)] = 1;
    } else {
        std::bernoulli_distribution coin(std::min(1.0, p_mod));
        bool any = false;
        while (!any)
            for (std::size_t i = 0; i < x.size(); ++i) any |= (mask[i] = coin(rng) ? 1 : 0);
    }
    Point out = x;
    for (std::size_t i = 0; i < x.size(); ++i)
        if (mask[i]) out[i] = perturb(i, x[i]);
    return out;
}

/// Shrinks every dimension to rho times its width, centered on best and
/// shifted inward where the centered interval would overflow. Returns
/// nullopt once any width falls below the quantization resolution of the
/// reference space (the original bounds by default).
inline std::optional<SearchSpace> range_resize(const SearchSpace& space, const Point& best, double rho,
                                               const SearchSpace* reference = nullptr, int digits = 6) {
    if (!space.contains(best)) throw ConfigError("range_resize: best point outside the space");
    if (rho <= 0.0 || rho > 1.0) throw ConfigError("range_resize: rho must be in (0,1]");
    const SearchSpace& ref = reference ? *reference : space;
    const double resolution = std::pow(10.0, -digits);
    std::vector<double> lo(space.dim()), hi(space.dim());
    for (std::size_t i = 0; i < space.dim(); ++i) {
        const double width = rho * space.range(i);
        if (width < resolution * ref.range(i)) return std::nullopt;
        double l = best[i] - 0.5 * width;
        if (l < space.lower[i]) l = space.lower[i];
        double u = l + width;
        if (u > space.upper[i]) {
            u = space.upper[i];
            l = u - width;
        }
        lo[i] = l;
        hi[i] = u;
    }
    return SearchSpace(std::move(lo), std::move(hi));
}

/// range_resize for the accelerated loops. Trend injections are clamped to the
/// original bounds only, so the running best can leave the narrowed working
/// region; the region is defined around the best, so it is re-centered (same
/// widths, shifted inward of the original bounds) before shrinking instead of
/// tripping the containment guard.
inline std::optional<SearchSpace> range_resize_following(const SearchSpace& working,
                                                         const Point& best, double rho,
                                                         const SearchSpace& original,
                                                         int digits = 6) {
    if (working.contains(best)) return range_resize(working, best, rho, &original, digits);
    std::vector<double> lo(working.dim()), hi(working.dim());
    for (std::size_t i = 0; i < working.dim(); ++i) {
        const double width = working.range(i);
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
    const SearchSpace followed(std::move(lo), std::move(hi));
    return range_resize(followed, best, rho, &original, digits);
}

}  // namespace bbopt

#endif
