#pragma once
#include <string>
#include <vector>

#include "hageo/dd/saturate.hpp"
#include "hageo/glang/plan.hpp"
#include "hageo/graph/graph.hpp"

namespace hageo::proof {

struct GoalNotProved : std::runtime_error {
    explicit GoalNotProved(const std::string& m) : std::runtime_error(m) {}
};

// self-contained proof: steps carry rendered object tokens (point names,
// P~Q line terms, circle names), so the originating graph can be dropped
struct Step {
    enum class By : uint8_t { Premise, AuxDef, Rule, Algebraic, Lines, Circles, Center };
    By by = By::Premise;
    std::string pred;
    std::vector<std::string> args;
    std::string rule;                // rule name for By::Rule
    std::string ar_kind;             // angle | ratio | length
    std::vector<uint32_t> from;      // indices of antecedent steps
};

struct ProofDag {
    std::string problem_text;        // the original program, verbatim
    uint64_t seed = 0;
    std::vector<std::string> aux;    // auxiliary construction statements
    std::vector<Step> steps;         // topological order
    std::vector<uint32_t> conclusions;

    size_t premise_count() const {
        size_t n = 0;
        for (const auto& s : steps)
            if (s.by == Step::By::Premise || s.by == Step::By::AuxDef) ++n;
        return n;
    }
};

// context needed to re-derive steps in isolation (scratch graphs share the
// plan's objects and structural members, but no facts)
struct TraceContext {
    const glang::ConstructionPlan* plan;
    const numeric::Diagram* diagram;
    const numeric::NumericConfig* cfg;
    const dd::RuleSet* rules;
};

// backward reachability from the goal facts over first justifications, with
// per-step citation lists greedily minimized so that deleting any antecedent
// breaks the step
ProofDag traceback(const graph::DeductionGraph& g, const TraceContext& ctx,
                   const std::vector<std::pair<graph::Pred, graph::Args>>& goals);

// re-derive one step from exactly the given antecedent facts on a scratch
// graph; used by traceback minimization and by the proof checker
bool rederive_step(const TraceContext& ctx, graph::Pred pred, const graph::Args& args,
                   Step::By by, const std::string& rule_name,
                   const std::vector<std::pair<graph::Pred, graph::Args>>& antecedents);

} // namespace hageo::proof
