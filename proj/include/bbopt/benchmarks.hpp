#ifndef BBOPT_BENCHMARKS_HPP
#define BBOPT_BENCHMARKS_HPP

#include <cmath>
#include <cstddef>
#include <numbers>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "bbopt/core.hpp"
#include "bbopt/evaluator.hpp"

namespace bbopt {

struct BenchmarkSpec {
    std::string name;
    std::string description;
    Problem problem;
    Sense sense = Sense::minimize;
    double reference_value = 1.0;          // error-ratio denominator
    std::vector<double> default_weights;   // scalarizer weights
    std::vector<std::string> objective_names;
    std::optional<Point> optimum_point;    // calibration ground truth
    std::optional<double> optimum_value;
    Point start_far, start_near;
};

struct BenchmarkOptions {
    int dim = 0;                   // 0 -> benchmark default
    double noise_sigma = -1.0;     // < 0 -> benchmark default
    double cost_seconds = -1.0;    // < 0 -> benchmark default
    double condition_number = 100; // quadratic only
    std::uint64_t seed = 42;       // construction seed
};

namespace detail {

inline double pick(double requested, double fallback) {
    return requested < 0 ? fallback : requested;
}

}  // namespace detail

/// Jagged mono-objective minimization over wide bounds: a min-composition of
/// quadratic wells whose depths lie within a few percent of each other, plus
/// a short-wavelength cosine ripple that vanishes on the deepest well's
/// lattice. The global optimum is the deepest well's center by construction.
inline BenchmarkSpec fitting_like(const BenchmarkOptions& opt = {}) {
    const std::size_t dim = opt.dim > 0 ? static_cast<std::size_t>(opt.dim) : 5;
    if (dim < 2) throw ConfigError("fitting_like: dim must be >= 2");
    constexpr double kBound = 10.0, kPitch = 1.25, kCurvature = 0.002, kRipple = 0.01;
    const double omega = 2.0 * std::numbers::pi / kPitch;

    auto rng = engine_for(opt.seed, 7);
    std::uniform_int_distribution<int> lattice(-4, 4);
    Point best_center(dim);
    for (double& c : best_center) c = kPitch * lattice(rng);

    const std::vector<double> depths = {0.05, 0.0505, 0.0508, 0.0511, 0.0514, 0.0517};
    std::vector<Point> centers{best_center};
    std::uniform_int_distribution<int> offset(-3, 3);
    while (centers.size() < depths.size()) {
        Point c(dim);
        bool moved = false;
        for (std::size_t i = 0; i < dim; ++i) {
            const int o = offset(rng);
            moved |= (o != 0);
            c[i] = best_center[i] + kPitch * o;
        }
        if (!moved) continue;
        bool duplicate = false;
        for (const Point& seen : centers)
            if (seen == c) duplicate = true;
        if (!duplicate) centers.push_back(std::move(c));
    }

    BenchmarkSpec spec;
    spec.name = "fitting_like";
    spec.description =
        "mono-objective profile-fitting stand-in: many near-equal minima over wide jagged bounds";
    spec.sense = Sense::minimize;
    spec.reference_value = 0.06;
    spec.default_weights = {1.0};
    spec.objective_names = {"error"};
    spec.problem.space = SearchSpace::cube(dim, -kBound, kBound);
    spec.problem.objective_count = 1;
    spec.problem.noise_sigma = detail::pick(opt.noise_sigma, 0.003);
    spec.problem.trust_factor = 1.0;
    spec.problem.cost_seconds = detail::pick(opt.cost_seconds, 27.0);
    spec.problem.eval_fn = [centers, depths, best_center, omega](const Point& x) {
        double wells = std::numeric_limits<double>::infinity();
        for (std::size_t j = 0; j < centers.size(); ++j) {
            double d2 = 0.0;
            for (std::size_t i = 0; i < x.size(); ++i) {
                const double d = x[i] - centers[j][i];
                d2 += d * d;
            }
            wells = std::min(wells, depths[j] + kCurvature * d2);
        }
        double ripple = 0.0;
        for (std::size_t i = 0; i < x.size(); ++i)
            ripple += 1.0 - std::cos(omega * (x[i] - best_center[i]));
        return ObjectiveReport{{wells + kRipple * ripple}, 0.0};
    };
    spec.optimum_point = best_center;
    spec.optimum_value = depths.front();
    spec.start_far.resize(dim);
    for (std::size_t i = 0; i < dim; ++i)
        spec.start_far[i] = best_center[i] > 0 ? -kBound : kBound;
    spec.start_near.resize(dim);
    for (std::size_t i = 0; i < dim; ++i)
        spec.start_near[i] = best_center[i] + 0.25 * kPitch * (i % 2 ? -1.0 : 1.0);
    return spec;
}

/// Layout constants of the blade-like problem, exposed so tests can compute
/// the constructed front in closed form.
struct BladeLayout {
    std::vector<double> anchor;     // optimal values of x[1..]
    std::vector<double> curvature;  // per-dimension penalty curvature
    double beta = 1.0;
};

inline BladeLayout blade_layout(std::size_t dim, std::uint64_t seed) {
    if (dim < 2) throw ConfigError("blade_like: dim must be >= 2");
    auto rng = engine_for(seed, 8);
    std::uniform_real_distribution<double> anchor(-0.5, 0.5);
    std::uniform_real_distribution<double> curve(0.5, 1.5);
    BladeLayout layout;
    layout.anchor.resize(dim - 1);
    layout.curvature.resize(dim - 1);
    for (double& a : layout.anchor) a = anchor(rng);
    for (double& c : layout.curvature) c = curve(rng);
    return layout;
}

/// The three objective values on the constructed front at trade-off u.
inline std::vector<double> blade_front_values(double u) {
    return {u, std::sqrt(std::max(0.0, 1.0 - u * u)), 0.5 + 0.5 * u};
}

/// Three-objective maximization with a closed-form concave Pareto front:
/// the trade-off is carried by x[0] alone (eta up, area down, mc up), and any
/// displacement of x[1..] from the anchor subtracts the same penalty from all
/// three objectives, so interior points are dominated by their projection.
inline BenchmarkSpec blade_like(const BenchmarkOptions& opt = {}) {
    const std::size_t dim = opt.dim > 0 ? static_cast<std::size_t>(opt.dim) : 6;
    const BladeLayout layout = blade_layout(dim, opt.seed);

    BenchmarkSpec spec;
    spec.name = "blade_like";
    spec.description =
        "three-objective blade stand-in: eta/area trade-off with mc riding eta, closed-form front";
    spec.sense = Sense::maximize;
    spec.reference_value = 1.0;
    spec.default_weights = {1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0};
    spec.objective_names = {"eta", "area_obj", "mc_obj"};
    std::vector<double> lo(dim, -1.0), hi(dim, 1.0);
    lo[0] = 0.0;
    spec.problem.space = SearchSpace(std::move(lo), std::move(hi));
    spec.problem.objective_count = 3;
    spec.problem.noise_sigma = detail::pick(opt.noise_sigma, 0.002);
    spec.problem.trust_factor = 0.0;
    spec.problem.cost_seconds = detail::pick(opt.cost_seconds, 75.0);
    spec.problem.eval_fn = [layout](const Point& x) {
        const double u = x[0];
        double delta = 0.0;
        for (std::size_t i = 1; i < x.size(); ++i) {
            const double d = x[i] - layout.anchor[i - 1];
            delta += layout.curvature[i - 1] * d * d;
        }
        std::vector<double> v = blade_front_values(u);
        for (double& o : v) o -= layout.beta * delta;
        return ObjectiveReport{std::move(v), 0.0};
    };

    // Equal-weights argmax along the front: d/du (1.5u + sqrt(1-u^2)) = 0.
    const double u_star = 1.5 / std::sqrt(1.0 + 1.5 * 1.5);
    spec.start_near.resize(dim);
    spec.start_near[0] = u_star;
    for (std::size_t i = 1; i < dim; ++i)
        spec.start_near[i] = layout.anchor[i - 1] + 0.05 * (i % 2 ? -1.0 : 1.0);
    spec.start_far.resize(dim);
    spec.start_far[0] = 0.05;
    for (std::size_t i = 1; i < dim; ++i)
        spec.start_far[i] = layout.anchor[i - 1] > 0 ? -0.8 : 0.8;
    return spec;
}

/// f = sum x_i^2, optimum at the origin.
inline BenchmarkSpec sphere(const BenchmarkOptions& opt = {}) {
    const std::size_t dim = opt.dim > 0 ? static_cast<std::size_t>(opt.dim) : 5;
    BenchmarkSpec spec;
    spec.name = "sphere";
    spec.description = "smooth convex calibration bowl";
    spec.sense = Sense::minimize;
    spec.reference_value = 1.0;
    spec.default_weights = {1.0};
    spec.objective_names = {"value"};
    spec.problem.space = SearchSpace::cube(dim, -5.0, 5.0);
    spec.problem.objective_count = 1;
    spec.problem.noise_sigma = detail::pick(opt.noise_sigma, 0.0);
    spec.problem.trust_factor = 0.0;
    spec.problem.cost_seconds = detail::pick(opt.cost_seconds, 1.0);
    spec.problem.eval_fn = [](const Point& x) {
        double s = 0.0;
        for (double v : x) s += v * v;
        return ObjectiveReport{{s}, 0.0};
    };
    spec.optimum_point = Point(dim, 0.0);
    spec.optimum_value = 0.0;
    spec.start_far = Point(dim, 4.0);
    spec.start_near = Point(dim, 0.5);
    return spec;
}

/// Ill-conditioned quadratic. The per-dimension bound widths scale with
/// 1/sqrt(lambda_i), so the raw-space condition number is condition_number
/// while range-relative methods see an isotropic bowl.
inline BenchmarkSpec quadratic(const BenchmarkOptions& opt = {}) {
    const std::size_t dim = opt.dim > 0 ? static_cast<std::size_t>(opt.dim) : 4;
    const double cond = opt.condition_number;
    if (cond < 1.0) throw ConfigError("quadratic: condition_number must be >= 1");
    std::vector<double> lambda(dim);
    for (std::size_t i = 0; i < dim; ++i)
        lambda[i] = dim == 1 ? 1.0
                             : std::pow(cond, static_cast<double>(i) / static_cast<double>(dim - 1));
    constexpr double kHalfWidth = 5.0;
    std::vector<double> lo(dim), hi(dim);
    Point center(dim);
    for (std::size_t i = 0; i < dim; ++i) {
        const double w = kHalfWidth / std::sqrt(lambda[i]);
        center[i] = 0.3 * w * (i % 2 ? -1.0 : 1.0);
        lo[i] = center[i] - w;
        hi[i] = center[i] + w;
    }
    BenchmarkSpec spec;
    spec.name = "quadratic";
    spec.description = "ill-conditioned convex quadratic calibration problem";
    spec.sense = Sense::minimize;
    spec.reference_value = 1.0;
    spec.default_weights = {1.0};
    spec.objective_names = {"value"};
    spec.problem.space = SearchSpace(std::move(lo), std::move(hi));
    spec.problem.objective_count = 1;
    spec.problem.noise_sigma = detail::pick(opt.noise_sigma, 0.0);
    spec.problem.trust_factor = 0.0;
    spec.problem.cost_seconds = detail::pick(opt.cost_seconds, 1.0);
    spec.problem.eval_fn = [lambda, center](const Point& x) {
        double s = 0.0;
        for (std::size_t i = 0; i < x.size(); ++i) {
            const double d = x[i] - center[i];
            s += lambda[i] * d * d;
        }
        return ObjectiveReport{{s}, 0.0};
    };
    spec.optimum_point = center;
    spec.optimum_value = 0.0;
    spec.start_far.resize(dim);
    spec.start_near.resize(dim);
    for (std::size_t i = 0; i < dim; ++i) {
        spec.start_far[i] = center[i] + 0.8 * (spec.problem.space.upper[i] - center[i]);
        spec.start_near[i] = center[i] + 0.1 * (spec.problem.space.upper[i] - center[i]);
    }
    return spec;
}

/// Rastrigin-style multimodal calibration function with a shifted optimum.
inline BenchmarkSpec multimodal(const BenchmarkOptions& opt = {}) {
    const std::size_t dim = opt.dim > 0 ? static_cast<std::size_t>(opt.dim) : 4;
    constexpr double kAmp = 10.0;
    auto rng = engine_for(opt.seed, 9);
    std::uniform_real_distribution<double> shift(-1.0, 1.0);
    Point center(dim);
    for (double& c : center) c = shift(rng);
    BenchmarkSpec spec;
    spec.name = "multimodal";
    spec.description = "rastrigin-like lattice of local minima around a shifted optimum";
    spec.sense = Sense::minimize;
    spec.reference_value = 1.0;
    spec.default_weights = {1.0};
    spec.objective_names = {"value"};
    spec.problem.space = SearchSpace::cube(dim, -5.12, 5.12);
    spec.problem.objective_count = 1;
    spec.problem.noise_sigma = detail::pick(opt.noise_sigma, 0.0);
    spec.problem.trust_factor = 0.0;
    spec.problem.cost_seconds = detail::pick(opt.cost_seconds, 1.0);
    spec.problem.eval_fn = [center](const Point& x) {
        double s = 0.0;
        for (std::size_t i = 0; i < x.size(); ++i) {
            const double d = x[i] - center[i];
            s += d * d - kAmp * std::cos(2.0 * std::numbers::pi * d) + kAmp;
        }
        return ObjectiveReport{{s}, 0.0};
    };
    spec.optimum_point = center;
    spec.optimum_value = 0.0;
    spec.start_far = Point(dim, 4.5);
    spec.start_near = center;
    for (double& c : spec.start_near) c += 0.1;
    return spec;
}

inline std::vector<std::string> benchmark_names() {
    return {"fitting_like", "blade_like", "sphere", "quadratic", "multimodal"};
}

inline BenchmarkSpec make_benchmark(const std::string& name, const BenchmarkOptions& opt = {}) {
    if (name == "fitting_like") return fitting_like(opt);
    if (name == "blade_like") return blade_like(opt);
    if (name == "sphere") return sphere(opt);
    if (name == "quadratic") return quadratic(opt);
    if (name == "multimodal") return multimodal(opt);
    throw ConfigError("unknown benchmark: " + name);
}

}  // namespace bbopt

#endif
