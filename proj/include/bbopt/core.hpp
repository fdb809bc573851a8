#ifndef BBOPT_CORE_HPP
#define BBOPT_CORE_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace bbopt {

/// A candidate configuration: one real value per free parameter.
using Point = std::vector<double>;

enum class Sense { minimize, maximize };

inline const char* to_string(Sense s) {
    return s == Sense::minimize ? "minimize" : "maximize";
}

/// Bad configuration / bad usage of an interface. Mapped to exit code 2 by the CLI.
struct ConfigError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Box-bounded search space.
struct SearchSpace {
    std::vector<double> lower;
    std::vector<double> upper;

    SearchSpace() = default;
    SearchSpace(std::vector<double> lo, std::vector<double> up)
        : lower(std::move(lo)), upper(std::move(up)) {
        if (lower.empty() || lower.size() != upper.size())
            throw ConfigError("SearchSpace: bounds must be non-empty and of equal length");
        for (std::size_t i = 0; i < lower.size(); ++i)
            if (!(lower[i] < upper[i]))
                throw ConfigError("SearchSpace: lower[" + std::to_string(i) + "] must be < upper[" +
                                  std::to_string(i) + "]");
    }

    static SearchSpace cube(std::size_t dim, double lo, double up) {
        return SearchSpace(std::vector<double>(dim, lo), std::vector<double>(dim, up));
    }

    std::size_t dim() const { return lower.size(); }
    double range(std::size_t i) const { return upper[i] - lower[i]; }

    bool contains(const Point& p, double tol = 0.0) const {
        if (p.size() != dim()) return false;
        for (std::size_t i = 0; i < p.size(); ++i)
            if (p[i] < lower[i] - tol || p[i] > upper[i] + tol) return false;
        return true;
    }

    Point clamp(const Point& p) const {
        if (p.size() != dim())
            throw ConfigError("clamp: point dimension " + std::to_string(p.size()) +
                              " does not match space dimension " + std::to_string(dim()));
        Point out(p.size());
        for (std::size_t i = 0; i < p.size(); ++i)
            out[i] = std::min(upper[i], std::max(lower[i], p[i]));
        return out;
    }

    /// Map raw coordinates onto [0,1] per dimension.
    Point normalize(const Point& p) const {
        Point out(p.size());
        for (std::size_t i = 0; i < p.size(); ++i) out[i] = (p[i] - lower[i]) / range(i);
        return out;
    }

    Point denormalize(const Point& u) const {
        Point out(u.size());
        for (std::size_t i = 0; i < u.size(); ++i) out[i] = lower[i] + u[i] * range(i);
        return out;
    }

    Point center() const {
        Point out(dim());
        for (std::size_t i = 0; i < dim(); ++i) out[i] = 0.5 * (lower[i] + upper[i]);
        return out;
    }
};

inline Point clamp(const SearchSpace& space, const Point& p) { return space.clamp(p); }

/// Euclidean distance in bounds-normalized coordinates.
inline double normalized_distance(const SearchSpace& space, const Point& a, const Point& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < space.dim(); ++i) {
        double d = (a[i] - b[i]) / space.range(i);
        s += d * d;
    }
    return std::sqrt(s);
}

// ---------------------------------------------------------------------------
// Seeded randomness. Every consumer derives its engine from (seed, stream) so
// concurrent evaluation order cannot change the draws.

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) {
    return splitmix64(seed ^ splitmix64(stream + 0x51ab3f7d92e1c4b5ULL));
}

inline std::mt19937_64 engine_for(std::uint64_t seed, std::uint64_t stream) {
    return std::mt19937_64(mix_seed(seed, stream));
}

inline double uniform_in(std::mt19937_64& rng, double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(rng);
}

inline double gaussian(std::mt19937_64& rng, double mean, double sigma) {
    if (sigma <= 0.0) return mean;
    return std::normal_distribution<double>(mean, sigma)(rng);
}

inline Point uniform_point(std::mt19937_64& rng, const SearchSpace& space) {
    Point p(space.dim());
    for (std::size_t i = 0; i < p.size(); ++i) p[i] = uniform_in(rng, space.lower[i], space.upper[i]);
    return p;
}

// ---------------------------------------------------------------------------

/// Vertex abscissa of the parabola through three (position, value) pairs.
/// Returns nullopt when the points are collinear (no quadratic term) or the
/// curvature has the wrong sign for the requested sense.
inline std::optional<double> parabola_vertex(double s0, double f0, double s1, double f1, double s2,
                                             double f2, Sense sense) {
    const double d01 = s0 - s1, d02 = s0 - s2, d12 = s1 - s2;
    if (d01 == 0.0 || d02 == 0.0 || d12 == 0.0)
        throw ConfigError("parabola_vertex: positions must be distinct");
    // Lagrange form: a = sum f_i / prod of its position differences
    const double a = f0 / (d01 * d02) - f1 / (d01 * d12) + f2 / (d02 * d12);
    const double scale = std::max({std::abs(f0), std::abs(f1), std::abs(f2), 1.0});
    if (std::abs(a) < 1e-12 * scale) return std::nullopt;  // collinear
    if (sense == Sense::minimize && a <= 0.0) return std::nullopt;
    if (sense == Sense::maximize && a >= 0.0) return std::nullopt;
    const double b = (f0 - f1) / d01 - a * (s0 + s1);
    return -b / (2.0 * a);
}

}  // namespace bbopt

#endif
