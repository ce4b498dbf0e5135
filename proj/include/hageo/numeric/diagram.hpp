#pragma once
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "hageo/glang/plan.hpp"
#include "hageo/numeric/geom.hpp"

namespace hageo::numeric {

struct NumericConfig {
    double tau_rel = 1e-9;      // acceptance tolerance, relative to diagram diameter
    double tau_margin = 1e-4;   // side-condition margin
    int max_resample = 64;
    int confirm_seeds = 5;
};

struct ObjCoord {
    glang::ObjKind kind;
    Vec2 pt;        // Point
    LineN line;     // Line
    CircleN circle; // Circle
};

struct Diagram {
    std::vector<ObjCoord> coords;        // one per plan step
    std::vector<int8_t> branches;        // two-solution branch taken per step (-1: n/a)
    double scale = 1.0;                  // configuration diameter
    uint64_t seed = 0;

    const ObjCoord& at(uint32_t id) const {
        if (id >= coords.size()) throw std::out_of_range("diagram: unknown object");
        return coords[id];
    }
    Vec2 point(uint32_t id) const { return at(id).pt; }
};

struct DegenerateDiagram : std::runtime_error {
    explicit DegenerateDiagram(const std::string& m) : std::runtime_error(m) {}
};
struct UnsatisfiableConstruction : std::runtime_error {
    explicit UnsatisfiableConstruction(const std::string& m) : std::runtime_error(m) {}
};
struct UnknownObject : std::runtime_error {
    explicit UnknownObject(const std::string& m) : std::runtime_error(m) {}
};

// Deterministic for fixed (plan, seed). When `follow` is given, two-solution
// constructions take the same branch tokens as the reference diagram.
Diagram sample_diagram(const glang::ConstructionPlan& plan, uint64_t seed,
                       const NumericConfig& cfg, const Diagram* follow = nullptr);

// predicate check on one diagram; s.pred uses the fact-store predicate names
bool check_statement(const Diagram& d, const glang::PlanFact& s, const NumericConfig& cfg);
double statement_residual(const Diagram& d, const glang::PlanFact& s);

// true iff the statement checks out on cfg.confirm_seeds independently sampled
// diagrams (all of them; one miss fails)
bool confirm_across_seeds(const glang::ConstructionPlan& plan, const glang::PlanFact& s,
                          const NumericConfig& cfg, uint64_t base_seed = 0);

// flat text table of the diagram, for debugging and plotting
std::string dump_diagram(const glang::ConstructionPlan& plan, const Diagram& d);

// resolve a plan arg to line coordinates (named line or line through 2 points)
LineN arg_line(const Diagram& d, const glang::PlanArg& a);

// residual of a predicate over already-resolved coordinates; pred uses the
// fact-store names (coll, cyclic, para, perp, cong, eqangle, eqratio, midp,
// center, simtriP, simtriN, contri, same, on_line, on_circle)
double residual_resolved(const std::string& pred, const std::vector<ObjCoord>& args, double scale);

} // namespace hageo::numeric
