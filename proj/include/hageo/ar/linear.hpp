#pragma once
#include <boost/multiprecision/cpp_int.hpp>
#include <map>
#include <vector>

#include "hageo/graph/graph.hpp"

namespace hageo::ar {

using Rat = boost::multiprecision::cpp_rational;

enum class ArKind : uint8_t { Angle = 0, Ratio = 1, Length = 2 };
inline const char* ar_kind_name(ArKind k) {
    return k == ArKind::Angle ? "angle" : k == ArKind::Ratio ? "ratio" : "length";
}

// angle: (line, kNoObj); ratio/length: segment endpoints (min, max)
struct VarKey {
    graph::ObjId a = graph::kNoObj, b = graph::kNoObj;
    bool operator<(const VarKey& o) const { return a != o.a ? a < o.a : b < o.b; }
    bool operator==(const VarKey& o) const = default;
};

// sparse row over variable columns 0..n-1 plus the constant column (pi for
// angle systems, log 2 for ratio systems) at index kConstCol
constexpr uint32_t kConstCol = 0x7fffffffu;

using Vec = std::vector<std::pair<uint32_t, Rat>>;  // sorted by column

struct Row {
    Vec coeffs;
    std::vector<graph::FactId> srcs;   // provenance
};

struct LinearSystem {
    ArKind kind = ArKind::Angle;
    std::vector<VarKey> vars;               // column -> key
    std::map<VarKey, uint32_t> var_index;
    std::vector<Row> rows;

    uint32_t var(const VarKey& k) {
        auto it = var_index.find(k);
        if (it != var_index.end()) return it->second;
        uint32_t c = uint32_t(vars.size());
        vars.push_back(k);
        var_index.emplace(k, c);
        return c;
    }
};

// one row per relevant stored fact (plus circumcenter angle relations scanned
// from cong patterns); equivalent variables are already merged because
// variables are keyed by canonical handles
LinearSystem encode_facts(graph::DeductionGraph& g, ArKind kind);

// vector helpers
void vec_add(Vec& v, uint32_t col, const Rat& c);
void vec_axpy(Vec& v, const Rat& k, const Vec& w);  // v += k*w
const Rat* vec_get(const Vec& v, uint32_t col);
inline bool vec_zero(const Vec& v) { return v.empty(); }

} // namespace hageo::ar
