#pragma once
#include <string>
#include <vector>

#include "hageo/glang/plan.hpp"
#include "hageo/graph/graph.hpp"
#include "hageo/numeric/diagram.hpp"

namespace hageo::heuristic {

// detection universe: deduplicated numeric lines through named point pairs
// and circles through named triples, each remembering which named points sit
// on it and whether it carries a named handle
struct CurveRef {
    bool is_line = true;
    numeric::LineN line;
    numeric::CircleN circle;
    std::vector<uint32_t> on_pts;       // plan ids of named points on the curve
    uint32_t named_obj = glang::kNone;  // plan id of a named handle, if any
    uint32_t a = glang::kNone, b = glang::kNone, c = glang::kNone;  // witness points
};

enum class Category : uint8_t {
    LineConcurrence = 1,   // >=3 lines through one new point
    MixedConcurrence = 2,  // >=3 curves, at least one line and one circle
    Midpoint = 3,
    Reflection = 4,
    Foot = 5,
    Random = 6,
    IdenticalPoint = 7,
};

struct AuxCandidate {
    Category category;
    // the construction, as geometry-language statements binding fresh names
    std::vector<glang::Statement> construction;
    // human-readable witness description
    std::string witnesses;
    // the non-trivial incidences the new point satisfies (indices into the
    // curve universe are not stable, so these carry rendered text)
    std::vector<std::string> novelty;
    numeric::Vec2 at;   // where the new point lands (first bound name)
};

struct HeuristicConfig {
    numeric::NumericConfig numeric;
    double category6_weight = 0.15;
    bool confirm = true;   // confirm each novelty incidence across seeds
};

// the curve universe for a diagram: all lines through pairs and circles
// through noncollinear triples of named points, numerically deduplicated
std::vector<CurveRef> curve_universe(const glang::ConstructionPlan& plan,
                                     const numeric::Diagram& d,
                                     const numeric::NumericConfig& cfg);

// categories 1-5 plus identical-point, with the syntactic-triviality filter
std::vector<AuxCandidate> enumerate_candidates(const glang::ConstructionPlan& plan,
                                               const numeric::Diagram& d,
                                               const graph::DeductionGraph& g,
                                               const HeuristicConfig& cfg);

} // namespace hageo::heuristic
