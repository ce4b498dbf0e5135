#pragma once
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "hageo/glang/ast.hpp"
#include "hageo/glang/validate.hpp"

namespace hageo::glang {

constexpr uint32_t kNone = 0xffffffffu;

// argument of a primitive constraint: a plan object, or the derived line
// through two plan points
struct PlanArg {
    uint32_t obj = kNone;
    uint32_t p2 = kNone;
    static PlanArg of(uint32_t o) { return {o, kNone}; }
    static PlanArg line_of(uint32_t a, uint32_t b) { return {a, b}; }
    bool is_line_of() const { return p2 != kNone; }
    bool operator==(const PlanArg&) const = default;
};

// primitive constraint seeded into the deduction graph as a premise.
// preds: coll cyclic para perp cong eqangle midp center on_line on_circle
struct PlanFact {
    std::string pred;
    std::vector<PlanArg> args;
    uint32_t stmt = kNone;
};

struct PlanStep {
    enum class Op {
        FreePoint, OnLine, OnCircle,
        Midpoint, FootPPP, FootPL, Reflect, Circumcenter, Incenter, EquilateralApex,
        LineThrough, LineParallel, LinePerp, AngleLocus,
        CircleCenterThrough, Circumcircle,
        InterLL, InterLC, InterCC,
    };
    Op op;
    std::string name;
    ObjKind kind;
    std::vector<uint32_t> refs;
    int branch = -1;             // 0/1 when a two-solution op binds two names
    bool exclude_known = false;  // single name bound: skip solutions at defined points
    uint32_t stmt = kNone;
};

struct PlanSide {
    enum class Kind { NonCollinear, Distinct };
    Kind kind;
    std::vector<uint32_t> objs;
};

struct ConstructionPlan {
    std::vector<PlanStep> steps;
    std::vector<PlanSide> sides;
    std::vector<PlanFact> facts;
    std::vector<PlanFact> goal;
    std::map<std::string, uint32_t> index;   // name -> step
    size_t n_statements = 0;
    // statements below this index belong to the base problem; the global
    // point-distinctness side condition applies only to those (auxiliary
    // points may legitimately coincide with existing ones)
    size_t base_statements = 0;

    uint32_t id_of(const std::string& name) const {
        auto it = index.find(name);
        return it == index.end() ? kNone : it->second;
    }
    const PlanStep& step_of(const std::string& name) const { return steps[index.at(name)]; }
};

struct ElaborationError : std::runtime_error {
    explicit ElaborationError(const std::string& msg) : std::runtime_error(msg) {}
};

ConstructionPlan elaborate(const ValidatedProgram& v);

// extends an existing plan with further statements (auxiliary constructions);
// the statements are validated against the combined namespace
void extend_plan(ConstructionPlan& plan, const std::vector<Statement>& aux);

} // namespace hageo::glang
