#pragma once
#include <chrono>
#include <map>

#include "hageo/dd/rule.hpp"
#include "hageo/graph/graph.hpp"

namespace hageo::dd {

using Clock = std::chrono::steady_clock;
using Goals = std::vector<std::pair<graph::Pred, graph::Args>>;

inline bool goals_met(const graph::DeductionGraph& g, const Goals& goals) {
    if (goals.empty()) return false;
    for (const auto& [p, a] : goals)
        if (!g.has_fact(p, a)) return false;
    return true;
}

struct SaturationReport {
    enum class StoppedBy { Fixpoint, Goal, Timeout };
    int rounds = 0;
    int facts_added = 0;
    std::map<std::string, int> rule_fire_counts;
    double wall_time_s = 0;
    StoppedBy stopped_by = StoppedBy::Fixpoint;
};

// one full pass of a single rule; bindings touching facts with
// stamp > since are considered (since = 0 matches everything)
int apply_rule(graph::DeductionGraph& g, const Rule& r, int rule_idx, uint32_t since = 0);

SaturationReport saturate(graph::DeductionGraph& g, const RuleSet& rules, Clock::time_point deadline,
                          const Goals& goals = {});

} // namespace hageo::dd
