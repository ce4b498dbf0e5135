#pragma once
#include <array>
#include <cstdint>
#include <string>
#include <vector>

namespace hageo::graph {

using ObjId = uint32_t;
using FactId = uint32_t;
constexpr ObjId kNoObj = 0xffffffffu;
constexpr FactId kNoFact = 0xffffffffu;

enum class Pred : uint8_t {
    Coll, Cyclic, Para, Perp, Cong, EqAngle, EqRatio, Midp, Center,
    SimtriP, SimtriN, Contri,
    Same,   // merge directive; stored so proofs can cite the identification
};
constexpr int kNumPreds = 13;

const char* pred_name(Pred p);
bool pred_from_name(const std::string& s, Pred& out);
int pred_arity(Pred p);
// argument kind string, one of P/L/C per slot
const char* pred_argkinds(Pred p);

struct Args {
    uint8_t n = 0;
    std::array<ObjId, 8> a{};
    bool operator==(const Args& o) const {
        if (n != o.n) return false;
        for (int i = 0; i < n; ++i)
            if (a[i] != o.a[i]) return false;
        return true;
    }
    bool operator<(const Args& o) const {
        if (n != o.n) return n < o.n;
        for (int i = 0; i < n; ++i)
            if (a[i] != o.a[i]) return a[i] < o.a[i];
        return false;
    }
};

inline Args make_args(std::initializer_list<ObjId> xs) {
    Args r;
    for (ObjId x : xs) r.a[r.n++] = x;
    return r;
}

// canonical representative under the predicate's symmetry group
Args canonical_args(Pred p, const Args& in);
// all symmetry variants (canonicalization = min of these)
std::vector<Args> arg_variants(Pred p, const Args& in);
// true when the statement is trivially true of itself (e.g. cong(X,Y,X,Y))
bool trivial_fact(Pred p, const Args& in);

struct Justification {
    enum class Kind : uint8_t {
        Premise,        // construction-level fact of the base problem
        AuxDef,         // construction-level fact of an auxiliary round
        Rule,           // deduction rule application
        Algebraic,      // AR derivation
        LineMembers,    // materialized from line membership
        CircleMembers,  // materialized from circle membership
        CenterUnique,   // two center facts for one circle identify the centers
    };
    Kind kind = Kind::Premise;
    uint16_t rule = 0;      // rule table index for Kind::Rule
    uint8_t ar_kind = 0;    // 0 angle, 1 ratio, 2 length
    std::vector<FactId> antecedents;
};

struct FactRec {
    Pred pred;
    Args args;
    Justification just;
    uint32_t stamp = 0;     // bumped on re-canonicalization (semi-naive matching)
    bool shadowed = false;  // duplicate after a merge; kept only for citations
    bool trivial = false;   // trivialized under a merge; dropped from queries
};

} // namespace hageo::graph
