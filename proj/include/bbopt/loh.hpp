#ifndef BBOPT_LOH_HPP
#define BBOPT_LOH_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numeric>
#include <random>
#include <vector>

#include "bbopt/core.hpp"

namespace bbopt {

struct LohDesign {
    std::vector<Point> points;
    /// Maximin distance after construction and after every optimizer
    /// iteration (accepted or not); non-decreasing by construction.
    std::vector<double> maximin_history;
};

/// Smallest pairwise normalized distance of a design (infinity for < 2 points).
inline double min_pairwise_distance(const SearchSpace& space, const std::vector<Point>& pts) {
    double dmin = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < pts.size(); ++i)
        for (std::size_t j = i + 1; j < pts.size(); ++j)
            dmin = std::min(dmin, normalized_distance(space, pts[i], pts[j]));
    return dmin;
}

/// True when every dimension has exactly one point per equal-width stratum.
inline bool latin_property(const SearchSpace& space, const std::vector<Point>& pts) {
    const std::size_t n = pts.size();
    if (n == 0) return false;
    for (std::size_t d = 0; d < space.dim(); ++d) {
        std::vector<int> count(n, 0);
        for (const Point& p : pts) {
            double u = (p[d] - space.lower[d]) / space.range(d) * static_cast<double>(n);
            auto s = static_cast<long>(std::floor(u));
            if (s < 0 || s >= static_cast<long>(n)) return false;
            ++count[static_cast<std::size_t>(s)];
        }
        for (int c : count)
            if (c != 1) return false;
    }
    return true;
}

/// Random Latin hypercube improved toward maximin spacing by random
/// single-dimension pair swaps, accepting only non-worsening swaps. The Latin
/// property is preserved because a swap permutes one column's strata.
inline LohDesign loh_sample(const SearchSpace& space, std::size_t n, int optimizer_iters,
                            std::mt19937_64& rng) {
    if (n < 2) throw ConfigError("loh_sample: need at least 2 points");
    const std::size_t dim = space.dim();
    std::uniform_real_distribution<double> unit(0.0, 1.0);

    LohDesign design;
    design.points.assign(n, Point(dim));
    for (std::size_t d = 0; d < dim; ++d) {
        std::vector<std::size_t> strata(n);
        std::iota(strata.begin(), strata.end(), std::size_t{0});
        std::shuffle(strata.begin(), strata.end(), rng);
        for (std::size_t i = 0; i < n; ++i) {
            const double u = (static_cast<double>(strata[i]) + unit(rng)) / static_cast<double>(n);
            design.points[i][d] = space.lower[d] + u * space.range(d);
        }
    }

    double current = min_pairwise_distance(space, design.points);
    design.maximin_history.push_back(current);
    std::uniform_int_distribution<std::size_t> pick_dim(0, dim - 1);
    std::uniform_int_distribution<std::size_t> pick_point(0, n - 1);
    for (int it = 0; it < optimizer_iters; ++it) {
        const std::size_t d = pick_dim(rng);
        const std::size_t i = pick_point(rng);
        std::size_t j = pick_point(rng);
        if (i == j) j = (j + 1) % n;
        std::swap(design.points[i][d], design.points[j][d]);
        const double candidate = min_pairwise_distance(space, design.points);
        if (candidate >= current)
            current = candidate;
        else
            std::swap(design.points[i][d], design.points[j][d]);  // revert worsening swap
        design.maximin_history.push_back(current);
    }
    return design;
}

}  // namespace bbopt

#endif
