#ifndef BBOPT_RECORD_HPP
#define BBOPT_RECORD_HPP

#include <cstdint>
#include <vector>

#include "bbopt/core.hpp"
#include "bbopt/objective.hpp"

namespace bbopt {

/// One evaluation with its accounting metadata. eval_index is 1-based and
/// contiguous within a run; block_index is non-decreasing with eval_index.
struct EvaluationRecord {
    Point point;
    ObjectiveReport report;
    double scalar = 0.0;
    long eval_index = 0;
    long block_index = 0;
    double elapsed_seconds = 0.0;
};

/// Set of mutually non-dominated evaluation records.
class ParetoArchive {
  public:
    ParetoArchive() = default;
    explicit ParetoArchive(Sense sense) : sense_(sense) {}

    /// Adds e iff no member dominates it; drops members e dominates.
    /// Returns true when e joined the archive.
    bool insert(EvaluationRecord e) {
        for (const auto& m : members_)
            if (dominates(m.report, e.report, sense_)) return false;
        std::erase_if(members_, [&](const EvaluationRecord& m) { return dominates(e.report, m.report, sense_); });
        members_.push_back(std::move(e));
        return true;
    }

    const std::vector<EvaluationRecord>& members() const { return members_; }
    Sense sense() const { return sense_; }
    std::size_t size() const { return members_.size(); }
    bool empty() const { return members_.empty(); }

  private:
    Sense sense_ = Sense::minimize;
    std::vector<EvaluationRecord> members_;
};

}  // namespace bbopt

#endif
