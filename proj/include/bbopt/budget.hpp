#ifndef BBOPT_BUDGET_HPP
#define BBOPT_BUDGET_HPP

#include <chrono>
#include <limits>
#include <optional>

#include "bbopt/core.hpp"

namespace bbopt {

/// Stopping resource for a run. At least one of the two limits must be set.
/// batch_size is the parallel width of one evaluation block.
struct Budget {
    std::optional<long> max_evaluations;
    std::optional<double> max_seconds;
    int batch_size = 1;

    void validate() const {
        if (!max_evaluations && !max_seconds)
            throw ConfigError("Budget: set max_evaluations and/or max_seconds");
        if (max_evaluations && *max_evaluations <= 0)
            throw ConfigError("Budget: max_evaluations must be positive");
        if (max_seconds && *max_seconds <= 0)
            throw ConfigError("Budget: max_seconds must be positive");
        if (batch_size <= 0) throw ConfigError("Budget: batch_size must be positive");
    }
};

/// Wall clock for budget checks. By default virtual: one block of concurrent
/// evaluations advances it by the problem's simulated cost, which keeps
/// time-budgeted runs deterministic. In real-time mode it reads the steady
/// clock instead and advance() is a no-op.
class RunClock {
  public:
    explicit RunClock(bool real_time = false)
        : real_time_(real_time), start_(std::chrono::steady_clock::now()) {}

    double elapsed_seconds() const {
        if (!real_time_) return simulated_;
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    }

    void advance(double seconds) {
        if (!real_time_ && seconds > 0.0) simulated_ += seconds;
    }

    bool real_time() const { return real_time_; }

  private:
    bool real_time_;
    double simulated_ = 0.0;
    std::chrono::steady_clock::time_point start_;
};

}  // namespace bbopt

#endif
