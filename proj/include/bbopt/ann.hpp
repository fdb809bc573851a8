#ifndef BBOPT_ANN_HPP
#define BBOPT_ANN_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <iomanip>
#include <istream>
#include <limits>
#include <ostream>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "bbopt/core.hpp"
#include "bbopt/objective.hpp"

namespace bbopt {

struct AnnConfig {
    int hidden = 0;  // 0 resolves to max(8, 2 * input_dim)
    int epochs = 500;
    double learning_rate = 0.05;
    double validation_fraction = 0.2;

    void validate() const {
        if (hidden < 0) throw ConfigError("ann: hidden must be >= 0");
        if (epochs < 0) throw ConfigError("ann: epochs must be >= 0");
        if (learning_rate <= 0) throw ConfigError("ann: learning_rate must be positive");
        if (validation_fraction < 0 || validation_fraction >= 1)
            throw ConfigError("ann: validation_fraction must be in [0,1)");
    }
};

/// One hidden tanh layer, linear output. Inputs are affinely mapped to
/// [-1,1] from the stored bounds; outputs are standardized per objective.
struct AnnModel {
    std::size_t input_dim = 0, hidden = 0, output_dim = 0;
    std::vector<double> w1, b1;  // hidden x input (row-major), hidden
    std::vector<double> w2, b2;  // output x hidden (row-major), output
    std::vector<double> in_lo, in_hi;
    std::vector<double> out_mean, out_std;
    bool degenerate = false;  // an output column had (near) zero variance

    std::vector<double> normalize_input(const Point& x) const {
        std::vector<double> xn(input_dim);
        for (std::size_t i = 0; i < input_dim; ++i)
            xn[i] = 2.0 * (x[i] - in_lo[i]) / (in_hi[i] - in_lo[i]) - 1.0;
        return xn;
    }

    /// Forward pass in normalized coordinates.
    std::vector<double> forward_normalized(const std::vector<double>& xn,
                                           std::vector<double>* hidden_out = nullptr) const {
        std::vector<double> a1(hidden);
        for (std::size_t h = 0; h < hidden; ++h) {
            double z = b1[h];
            for (std::size_t i = 0; i < input_dim; ++i) z += w1[h * input_dim + i] * xn[i];
            a1[h] = std::tanh(z);
        }
        std::vector<double> y(output_dim);
        for (std::size_t o = 0; o < output_dim; ++o) {
            double z = b2[o];
            for (std::size_t h = 0; h < hidden; ++h) z += w2[o * hidden + h] * a1[h];
            y[o] = z;
        }
        if (hidden_out) *hidden_out = std::move(a1);
        return y;
    }
};

/// Deterministic surrogate prediction; trust penalty is always zero.
inline ObjectiveReport ann_predict(const AnnModel& model, const Point& x) {
    const std::vector<double> yn = model.forward_normalized(model.normalize_input(x));
    ObjectiveReport rep;
    rep.values.resize(model.output_dim);
    for (std::size_t o = 0; o < model.output_dim; ++o)
        rep.values[o] = yn[o] * model.out_std[o] + model.out_mean[o];
    rep.trust_penalty = 0.0;
    return rep;
}

namespace detail {

struct AnnGradients {
    std::vector<double> w1, b1, w2, b2;
};

/// Mean squared error over normalized rows: mean over samples and outputs.
inline double ann_mse(const AnnModel& m, const std::vector<std::vector<double>>& xn,
                      const std::vector<std::vector<double>>& yn) {
    double sum = 0.0;
    for (std::size_t s = 0; s < xn.size(); ++s) {
        const std::vector<double> out = m.forward_normalized(xn[s]);
        for (std::size_t o = 0; o < m.output_dim; ++o) {
            const double e = out[o] - yn[s][o];
            sum += e * e;
        }
    }
    return sum / (static_cast<double>(xn.size()) * static_cast<double>(m.output_dim));
}

/// Full-batch backprop gradients of ann_mse with respect to all weights.
inline AnnGradients ann_backprop(const AnnModel& m, const std::vector<std::vector<double>>& xn,
                                 const std::vector<std::vector<double>>& yn) {
    AnnGradients g;
    g.w1.assign(m.w1.size(), 0.0);
    g.b1.assign(m.b1.size(), 0.0);
    g.w2.assign(m.w2.size(), 0.0);
    g.b2.assign(m.b2.size(), 0.0);
    const double scale = 2.0 / (static_cast<double>(xn.size()) * static_cast<double>(m.output_dim));
    for (std::size_t s = 0; s < xn.size(); ++s) {
        std::vector<double> a1;
        const std::vector<double> out = m.forward_normalized(xn[s], &a1);
        std::vector<double> delta_out(m.output_dim);
        for (std::size_t o = 0; o < m.output_dim; ++o)
            delta_out[o] = scale * (out[o] - yn[s][o]);
        for (std::size_t o = 0; o < m.output_dim; ++o) {
            g.b2[o] += delta_out[o];
            for (std::size_t h = 0; h < m.hidden; ++h)
                g.w2[o * m.hidden + h] += delta_out[o] * a1[h];
        }
        for (std::size_t h = 0; h < m.hidden; ++h) {
            double back = 0.0;
            for (std::size_t o = 0; o < m.output_dim; ++o)
                back += delta_out[o] * m.w2[o * m.hidden + h];
            const double delta_h = back * (1.0 - a1[h] * a1[h]);
            g.b1[h] += delta_h;
            for (std::size_t i = 0; i < m.input_dim; ++i)
                g.w1[h * m.input_dim + i] += delta_h * xn[s][i];
        }
    }
    return g;
}

}  // namespace detail

/// Trains a one-hidden-layer network by full-batch gradient descent on MSE,
/// holding out validation_fraction of the rows and returning the weights with
/// the best validation error seen (the initial weights count as a candidate).
inline AnnModel train_ann(const SearchSpace& space,
                          const std::vector<std::pair<Point, ObjectiveReport>>& samples,
                          const AnnConfig& cfg, std::mt19937_64& rng) {
    cfg.validate();
    if (samples.size() < 2 * space.dim())
        throw ConfigError("train_ann: need at least 2*dim samples");
    const std::size_t dim = space.dim();
    const std::size_t m_out = samples.front().second.values.size();

    AnnModel model;
    model.input_dim = dim;
    model.hidden = cfg.hidden > 0 ? static_cast<std::size_t>(cfg.hidden)
                                  : std::max<std::size_t>(8, 2 * dim);
    model.output_dim = m_out;
    model.in_lo = space.lower;
    model.in_hi = space.upper;

    model.out_mean.assign(m_out, 0.0);
    model.out_std.assign(m_out, 0.0);
    for (const auto& s : samples)
        for (std::size_t o = 0; o < m_out; ++o) model.out_mean[o] += s.second.values[o];
    for (double& v : model.out_mean) v /= static_cast<double>(samples.size());
    for (const auto& s : samples)
        for (std::size_t o = 0; o < m_out; ++o) {
            const double d = s.second.values[o] - model.out_mean[o];
            model.out_std[o] += d * d;
        }
    for (double& v : model.out_std) {
        v = std::sqrt(v / static_cast<double>(samples.size()));
        if (v < 1e-12) {
            v = 1.0;
            model.degenerate = true;
        }
    }

    std::vector<std::vector<double>> xn(samples.size()), yn(samples.size());
    for (std::size_t s = 0; s < samples.size(); ++s) {
        xn[s] = model.normalize_input(samples[s].first);
        yn[s].resize(m_out);
        for (std::size_t o = 0; o < m_out; ++o)
            yn[s][o] = (samples[s].second.values[o] - model.out_mean[o]) / model.out_std[o];
    }

    const double init_scale = 1.0 / std::sqrt(static_cast<double>(dim));
    std::uniform_real_distribution<double> init1(-init_scale, init_scale);
    const double init_scale2 = 1.0 / std::sqrt(static_cast<double>(model.hidden));
    std::uniform_real_distribution<double> init2(-init_scale2, init_scale2);
    model.w1.resize(model.hidden * dim);
    model.b1.assign(model.hidden, 0.0);
    model.w2.resize(m_out * model.hidden);
    model.b2.assign(m_out, 0.0);
    for (double& w : model.w1) w = init1(rng);
    for (double& w : model.w2) w = init2(rng);

    std::vector<std::size_t> order(samples.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::shuffle(order.begin(), order.end(), rng);
    std::size_t val_count = 0;
    if (cfg.validation_fraction > 0 && samples.size() >= 3)
        val_count = std::min(samples.size() - 2,
                             std::max<std::size_t>(1, static_cast<std::size_t>(std::llround(
                                                          cfg.validation_fraction *
                                                          static_cast<double>(samples.size())))));
    std::vector<std::vector<double>> train_x, train_y, val_x, val_y;
    for (std::size_t k = 0; k < order.size(); ++k) {
        const bool validation = k < val_count;
        (validation ? val_x : train_x).push_back(xn[order[k]]);
        (validation ? val_y : train_y).push_back(yn[order[k]]);
    }
    const auto& score_x = val_count ? val_x : train_x;
    const auto& score_y = val_count ? val_y : train_y;

    AnnModel best = model;
    double best_val = detail::ann_mse(model, score_x, score_y);
    for (int epoch = 0; epoch < cfg.epochs; ++epoch) {
        const detail::AnnGradients g = detail::ann_backprop(model, train_x, train_y);
        for (std::size_t i = 0; i < model.w1.size(); ++i) model.w1[i] -= cfg.learning_rate * g.w1[i];
        for (std::size_t i = 0; i < model.b1.size(); ++i) model.b1[i] -= cfg.learning_rate * g.b1[i];
        for (std::size_t i = 0; i < model.w2.size(); ++i) model.w2[i] -= cfg.learning_rate * g.w2[i];
        for (std::size_t i = 0; i < model.b2.size(); ++i) model.b2[i] -= cfg.learning_rate * g.b2[i];
        const double val = detail::ann_mse(model, score_x, score_y);
        if (val < best_val) {
            best_val = val;
            best = model;
        }
    }
    return best;
}

/// Validation RMSE of a model against rows it has never seen, in raw units
/// normalized by each output's training std (for reporting).
inline double ann_rmse_normalized(const AnnModel& model,
                                  const std::vector<std::pair<Point, ObjectiveReport>>& rows) {
    if (rows.empty()) throw ConfigError("ann_rmse_normalized: no rows");
    double sum = 0.0;
    std::size_t count = 0;
    for (const auto& r : rows) {
        const ObjectiveReport pred = ann_predict(model, r.first);
        for (std::size_t o = 0; o < model.output_dim; ++o) {
            const double e = (pred.values[o] - r.second.values[o]) / model.out_std[o];
            sum += e * e;
            ++count;
        }
    }
    return std::sqrt(sum / static_cast<double>(count));
}

inline void save_ann(const AnnModel& m, std::ostream& os) {
    os << "ann 1\n";
    os << "dims " << m.input_dim << ' ' << m.hidden << ' ' << m.output_dim << '\n';
    os << "degenerate " << (m.degenerate ? 1 : 0) << '\n';
    os << std::setprecision(std::numeric_limits<double>::max_digits10);
    auto row = [&os](const char* tag, const std::vector<double>& v) {
        os << tag;
        for (double x : v) os << ' ' << x;
        os << '\n';
    };
    row("in_lo", m.in_lo);
    row("in_hi", m.in_hi);
    row("out_mean", m.out_mean);
    row("out_std", m.out_std);
    row("w1", m.w1);
    row("b1", m.b1);
    row("w2", m.w2);
    row("b2", m.b2);
}

inline AnnModel load_ann(std::istream& is) {
    auto fail = [] { throw ConfigError("load_ann: malformed model file"); };
    std::string tag;
    int version = 0;
    if (!(is >> tag >> version) || tag != "ann" || version != 1) fail();
    AnnModel m;
    if (!(is >> tag >> m.input_dim >> m.hidden >> m.output_dim) || tag != "dims") fail();
    int flag = 0;
    if (!(is >> tag >> flag) || tag != "degenerate") fail();
    m.degenerate = flag != 0;
    auto row = [&](const char* expect, std::vector<double>& v, std::size_t count) {
        if (!(is >> tag) || tag != expect) fail();
        v.resize(count);
        for (double& x : v)
            if (!(is >> x)) fail();
    };
    row("in_lo", m.in_lo, m.input_dim);
    row("in_hi", m.in_hi, m.input_dim);
    row("out_mean", m.out_mean, m.output_dim);
    row("out_std", m.out_std, m.output_dim);
    row("w1", m.w1, m.hidden * m.input_dim);
    row("b1", m.b1, m.hidden);
    row("w2", m.w2, m.output_dim * m.hidden);
    row("b2", m.b2, m.output_dim);
    return m;
}

}  // namespace bbopt

#endif
