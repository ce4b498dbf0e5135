#pragma once
#include "hageo/ar/derive.hpp"
#include "hageo/dd/saturate.hpp"

namespace hageo::ar {

struct RoundReport {
    int dd_added = 0;
    int ar_added = 0;
    bool goal = false;
    bool timeout = false;
    std::map<std::string, int> rule_fires;
};

// one DD saturation followed by AR over the three kinds, findings fed back
RoundReport ddar_round(graph::DeductionGraph& g, const dd::RuleSet& rules,
                       dd::Clock::time_point deadline, const dd::Goals& goals);

struct DdarOutcome {
    enum class Status { Goal, Fixpoint, Timeout };
    Status status = Status::Fixpoint;
    int rounds = 0;
    int facts_added = 0;
    double wall_s = 0;
    std::map<std::string, int> rule_fires;
};

// alternate DD and AR until a full round adds nothing, the goal appears, or
// the deadline passes
DdarOutcome ddar_loop(graph::DeductionGraph& g, const dd::RuleSet& rules,
                      std::chrono::duration<double> budget, const dd::Goals& goals);

} // namespace hageo::ar
