#include "hageo/glang/validate.hpp"

#include <cctype>

#include "hageo/glang/constructors.hpp"

namespace hageo::glang {

namespace {

const std::vector<ConstructorInfo> kConstructors = {
    {"triangle", {{"PPP", ""}}},
    {"point", {{"P", ""}}},
    {"line", {{"L", "PP"}}},
    {"circle_center_point", {{"C", "PP"}}},
    {"circumcenter", {{"P", "PPP"}}},
    {"circumcircle", {{"C", "PPP"}}},
    {"incenter", {{"P", "PPP"}}},
    {"midpoint", {{"P", "PP"}}},
    {"intersection", {{"P", "KK"}, {"PP", "KK"}}},
    {"on_line", {{"P", "L"}}},
    {"on_circle", {{"P", "C"}}},
    {"angle_equal1", {{"L", "PPPPP"}}},
    {"foot", {{"P", "PPP"}, {"P", "PL"}}},
    {"reflection", {{"P", "PP"}}},
    {"parallel_line", {{"L", "PL"}}},
    {"perpendicular_line", {{"L", "PL"}}},
    {"equilateral_apex", {{"P", "PP"}}},
};

const std::vector<GoalSig> kGoals = {
    {"cong", {"PPPP"}},
    {"collinear", {"PPP"}},
    {"concyclic", {"PPPP"}},
    {"para", {"PPPP", "LL"}},
    {"perp", {"PPPP", "LL"}},
    {"eqangle", {"PPPPPPPP", "LLLL"}},
    {"midpoint", {"PPP"}},
    {"circumcenter", {"PPPP"}},
};

bool kind_matches(char spec, ObjKind k) {
    switch (spec) {
        case 'P': return k == ObjKind::Point;
        case 'L': return k == ObjKind::Line;
        case 'C': return k == ObjKind::Circle;
        case 'K': return k == ObjKind::Line || k == ObjKind::Circle;
    }
    return false;
}

ObjKind kind_of_spec(char spec) {
    switch (spec) {
        case 'L': return ObjKind::Line;
        case 'C': return ObjKind::Circle;
        default: return ObjKind::Point;
    }
}

bool reserved_aux_name(const std::string& n) {
    if (n.size() < 4 || n.compare(0, 3, "aux") != 0) return false;
    for (size_t i = 3; i < n.size(); ++i)
        if (!std::isdigit((unsigned char)n[i])) return false;
    return true;
}

} // namespace

const std::vector<ConstructorInfo>& constructor_table() { return kConstructors; }

const ConstructorInfo* find_constructor(const std::string& name) {
    for (const auto& c : kConstructors)
        if (c.name == name) return &c;
    return nullptr;
}

const std::vector<GoalSig>& goal_table() { return kGoals; }

const GoalSig* find_goal(const std::string& name) {
    for (const auto& g : kGoals)
        if (g.name == name) return &g;
    return nullptr;
}

ValidatedProgram validate_program(const Program& p) {
    ValidatedProgram out;
    out.program = p;
    std::map<std::string, ObjKind>& kinds = out.kinds;

    for (const auto& st : p.statements) {
        const ConstructorInfo* info = find_constructor(st.constructor);
        if (!info) throw UnsupportedConstructor(st.constructor, st.line);
        for (const auto& n : st.lhs_names) {
            if (reserved_aux_name(n))
                throw KindMismatch("non-reserved identifier", "'" + n + "' (aux namespace is reserved)", st.line);
        }
        // resolve argument kinds first
        std::string argkinds;
        for (const auto& a : st.args) {
            if (std::isdigit((unsigned char)a[0]) || a[0] == '-')
                throw KindMismatch("identifier", "numeric literal '" + a + "'", st.line);
            auto it = kinds.find(a);
            if (it == kinds.end()) throw UndefinedReference(a, st.line);
            switch (it->second) {
                case ObjKind::Point: argkinds += 'P'; break;
                case ObjKind::Line: argkinds += 'L'; break;
                case ObjKind::Circle: argkinds += 'C'; break;
            }
        }
        // pick a signature
        int chosen = -1;
        for (size_t si = 0; si < info->sigs.size(); ++si) {
            const auto& sig = info->sigs[si];
            if (sig.lhs.size() != st.lhs_names.size()) continue;
            if (sig.args.size() != st.args.size()) continue;
            bool ok = true;
            for (size_t i = 0; i < argkinds.size(); ++i)
                if (!kind_matches(sig.args[i], kinds.at(st.args[i]))) { ok = false; break; }
            if (ok) { chosen = int(si); break; }
        }
        if (chosen < 0) {
            // distinguish lhs-count/arity problems from kind problems for the message
            std::string expect = st.constructor + "(";
            for (const auto& sig : info->sigs) expect += " " + sig.lhs + "=" + sig.args;
            expect += " )";
            throw KindMismatch(expect, std::to_string(st.lhs_names.size()) + " names = " + argkinds, st.line);
        }
        const auto& sig = info->sigs[chosen];
        for (size_t i = 0; i < st.lhs_names.size(); ++i) {
            kinds[st.lhs_names[i]] = kind_of_spec(sig.lhs[i]);
        }
        out.sig_choice.push_back(chosen);
    }

    // goal
    const GoalSig* g = find_goal(p.goal.predicate);
    if (!g) throw UnsupportedConstructor(p.goal.predicate, p.goal.line);
    std::string argkinds;
    for (const auto& a : p.goal.args) {
        auto it = kinds.find(a);
        if (it == kinds.end()) throw UndefinedReference(a, p.goal.line);
        argkinds += (it->second == ObjKind::Point ? 'P' : it->second == ObjKind::Line ? 'L' : 'C');
    }
    int chosen = -1;
    for (size_t fi = 0; fi < g->arg_forms.size(); ++fi)
        if (g->arg_forms[fi] == argkinds) { chosen = int(fi); break; }
    if (chosen < 0) throw KindMismatch("goal " + g->name + " arguments", argkinds, p.goal.line);
    out.goal_sig = chosen;
    return out;
}

} // namespace hageo::glang
