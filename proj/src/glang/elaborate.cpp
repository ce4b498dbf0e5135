#include "hageo/glang/plan.hpp"

#include <algorithm>
#include <set>

#include "hageo/glang/constructors.hpp"

namespace hageo::glang {

namespace {

using Op = PlanStep::Op;

struct Elab {
    ConstructionPlan& plan;
    uint32_t stmt_idx = 0;

    uint32_t id(const std::string& name) const {
        uint32_t i = plan.id_of(name);
        if (i == kNone) throw ElaborationError("unknown object '" + name + "'");
        return i;
    }

    uint32_t add_step(Op op, const std::string& name, ObjKind kind, std::vector<uint32_t> refs,
                      int branch = -1, bool excl = false) {
        PlanStep s{op, name, kind, std::move(refs), branch, excl, stmt_idx};
        plan.steps.push_back(std::move(s));
        uint32_t sid = uint32_t(plan.steps.size() - 1);
        plan.index[name] = sid;
        return sid;
    }

    void fact(const std::string& pred, std::vector<PlanArg> args) {
        plan.facts.push_back({pred, std::move(args), stmt_idx});
    }
    void side(PlanSide::Kind k, std::vector<uint32_t> objs) {
        plan.sides.push_back({k, std::move(objs)});
    }

    void curve_membership(uint32_t pt, uint32_t curve) {
        const PlanStep& c = plan.steps[curve];
        if (c.kind == ObjKind::Line)
            fact("on_line", {PlanArg::of(pt), PlanArg::of(curve)});
        else
            fact("on_circle", {PlanArg::of(pt), PlanArg::of(curve)});
    }

    void statement(const Statement& st) {
        const auto& lhs = st.lhs_names;
        const auto& a = st.args;
        const std::string& c = st.constructor;

        auto pt = [&](size_t i) { return id(a[i]); };

        if (c == "triangle") {
            uint32_t x = add_step(Op::FreePoint, lhs[0], ObjKind::Point, {});
            uint32_t y = add_step(Op::FreePoint, lhs[1], ObjKind::Point, {});
            uint32_t z = add_step(Op::FreePoint, lhs[2], ObjKind::Point, {});
            side(PlanSide::Kind::NonCollinear, {x, y, z});
        } else if (c == "point") {
            add_step(Op::FreePoint, lhs[0], ObjKind::Point, {});
        } else if (c == "line") {
            if (a[0] == a[1]) throw ElaborationError("degenerate: line through coincident arguments");
            add_step(Op::LineThrough, lhs[0], ObjKind::Line, {pt(0), pt(1)});
        } else if (c == "circle_center_point") {
            if (a[0] == a[1]) throw ElaborationError("degenerate: circle with zero radius");
            uint32_t w = add_step(Op::CircleCenterThrough, lhs[0], ObjKind::Circle, {pt(0), pt(1)});
            fact("center", {PlanArg::of(w), PlanArg::of(pt(0))});
        } else if (c == "circumcenter") {
            uint32_t o = add_step(Op::Circumcenter, lhs[0], ObjKind::Point, {pt(0), pt(1), pt(2)});
            side(PlanSide::Kind::NonCollinear, {pt(0), pt(1), pt(2)});
            fact("cong", {PlanArg::of(o), PlanArg::of(pt(0)), PlanArg::of(o), PlanArg::of(pt(1))});
            fact("cong", {PlanArg::of(o), PlanArg::of(pt(1)), PlanArg::of(o), PlanArg::of(pt(2))});
        } else if (c == "circumcircle") {
            // needs the circumcenter of the same triple defined earlier
            std::set<uint32_t> want{pt(0), pt(1), pt(2)};
            uint32_t center = kNone;
            for (uint32_t i = 0; i < plan.steps.size(); ++i) {
                const auto& s = plan.steps[i];
                if (s.op == Op::Circumcenter &&
                    std::set<uint32_t>(s.refs.begin(), s.refs.end()) == want)
                    center = i;
            }
            if (center == kNone)
                throw ElaborationError("circumcircle of " + a[0] + " " + a[1] + " " + a[2] +
                                       " needs their circumcenter defined first");
            uint32_t w = add_step(Op::Circumcircle, lhs[0], ObjKind::Circle,
                                  {pt(0), pt(1), pt(2), center});
            fact("center", {PlanArg::of(w), PlanArg::of(center)});
        } else if (c == "incenter") {
            uint32_t i = add_step(Op::Incenter, lhs[0], ObjKind::Point, {pt(0), pt(1), pt(2)});
            side(PlanSide::Kind::NonCollinear, {pt(0), pt(1), pt(2)});
            // internal bisectors from the first two vertices; the third is derivable
            fact("eqangle", {PlanArg::line_of(pt(0), pt(1)), PlanArg::line_of(pt(0), i),
                             PlanArg::line_of(pt(0), i), PlanArg::line_of(pt(0), pt(2))});
            fact("eqangle", {PlanArg::line_of(pt(1), pt(2)), PlanArg::line_of(pt(1), i),
                             PlanArg::line_of(pt(1), i), PlanArg::line_of(pt(1), pt(0))});
        } else if (c == "midpoint") {
            if (a[0] == a[1]) throw ElaborationError("degenerate: midpoint of coincident arguments");
            uint32_t m = add_step(Op::Midpoint, lhs[0], ObjKind::Point, {pt(0), pt(1)});
            fact("midp", {PlanArg::of(m), PlanArg::of(pt(0)), PlanArg::of(pt(1))});
        } else if (c == "intersection") {
            if (a[0] == a[1]) throw ElaborationError("degenerate: intersection of a curve with itself");
            uint32_t c1 = id(a[0]), c2 = id(a[1]);
            ObjKind k1 = plan.steps[c1].kind, k2 = plan.steps[c2].kind;
            if (k1 == ObjKind::Circle && k2 == ObjKind::Line) { std::swap(c1, c2); std::swap(k1, k2); }
            Op op = (k1 == ObjKind::Line && k2 == ObjKind::Line) ? Op::InterLL
                  : (k1 == ObjKind::Line) ? Op::InterLC : Op::InterCC;
            if (op == Op::InterLL && lhs.size() != 1)
                throw ElaborationError("two lines meet in one point; bind one name");
            if (lhs.size() == 1) {
                uint32_t x = add_step(op, lhs[0], ObjKind::Point, {c1, c2}, -1, op != Op::InterLL);
                curve_membership(x, c1);
                curve_membership(x, c2);
            } else {
                for (int b = 0; b < 2; ++b) {
                    uint32_t x = add_step(op, lhs[b], ObjKind::Point, {c1, c2}, b);
                    curve_membership(x, c1);
                    curve_membership(x, c2);
                }
                side(PlanSide::Kind::Distinct, {plan.id_of(lhs[0]), plan.id_of(lhs[1])});
            }
        } else if (c == "on_line") {
            uint32_t x = add_step(Op::OnLine, lhs[0], ObjKind::Point, {id(a[0])});
            curve_membership(x, id(a[0]));
        } else if (c == "on_circle") {
            uint32_t x = add_step(Op::OnCircle, lhs[0], ObjKind::Point, {id(a[0])});
            curve_membership(x, id(a[0]));
        } else if (c == "angle_equal1") {
            // line through apex a0: points X with dir(a0,X)-dir(a0,a1) = dir(a3,a2)-dir(a3,a4)
            add_step(Op::AngleLocus, lhs[0], ObjKind::Line, {pt(0), pt(1), pt(2), pt(3), pt(4)});
        } else if (c == "foot") {
            if (a.size() == 3) {
                if (a[1] == a[2]) throw ElaborationError("degenerate: foot on a line given twice the same point");
                uint32_t f = add_step(Op::FootPPP, lhs[0], ObjKind::Point, {pt(0), pt(1), pt(2)});
                fact("coll", {PlanArg::of(f), PlanArg::of(pt(1)), PlanArg::of(pt(2))});
                fact("perp", {PlanArg::line_of(pt(0), f), PlanArg::line_of(pt(1), pt(2))});
                side(PlanSide::Kind::NonCollinear, {pt(0), pt(1), pt(2)});
            } else {
                uint32_t f = add_step(Op::FootPL, lhs[0], ObjKind::Point, {pt(0), id(a[1])});
                curve_membership(f, id(a[1]));
                fact("perp", {PlanArg::line_of(pt(0), f), PlanArg::of(id(a[1]))});
            }
        } else if (c == "reflection") {
            if (a[0] == a[1]) throw ElaborationError("degenerate: reflection over the point itself");
            uint32_t x = add_step(Op::Reflect, lhs[0], ObjKind::Point, {pt(0), pt(1)});
            fact("midp", {PlanArg::of(pt(1)), PlanArg::of(pt(0)), PlanArg::of(x)});
        } else if (c == "parallel_line") {
            uint32_t m = add_step(Op::LineParallel, lhs[0], ObjKind::Line, {pt(0), id(a[1])});
            curve_membership(pt(0), m);
            fact("para", {PlanArg::of(m), PlanArg::of(id(a[1]))});
        } else if (c == "perpendicular_line") {
            uint32_t m = add_step(Op::LinePerp, lhs[0], ObjKind::Line, {pt(0), id(a[1])});
            curve_membership(pt(0), m);
            fact("perp", {PlanArg::of(m), PlanArg::of(id(a[1]))});
        } else if (c == "equilateral_apex") {
            if (a[0] == a[1]) throw ElaborationError("degenerate: equilateral apex over a null segment");
            uint32_t z = add_step(Op::EquilateralApex, lhs[0], ObjKind::Point, {pt(0), pt(1)});
            fact("cong", {PlanArg::of(z), PlanArg::of(pt(0)), PlanArg::of(z), PlanArg::of(pt(1))});
            fact("cong", {PlanArg::of(z), PlanArg::of(pt(0)), PlanArg::of(pt(0)), PlanArg::of(pt(1))});
        } else {
            throw ElaborationError("constructor '" + c + "' has no primitive expansion");
        }
    }
};

std::vector<PlanFact> goal_facts(const ConstructionPlan& plan, const GoalStatement& g) {
    std::vector<PlanFact> out;
    auto ob = [&](size_t i) { return plan.id_of(g.args[i]); };
    auto arg = [&](size_t i) { return PlanArg::of(ob(i)); };
    const std::string& p = g.predicate;
    size_t n = g.args.size();
    if (p == "cong") {
        out.push_back({"cong", {arg(0), arg(1), arg(2), arg(3)}, kNone});
    } else if (p == "collinear") {
        out.push_back({"coll", {arg(0), arg(1), arg(2)}, kNone});
    } else if (p == "concyclic") {
        out.push_back({"cyclic", {arg(0), arg(1), arg(2), arg(3)}, kNone});
    } else if (p == "midpoint") {
        out.push_back({"midp", {arg(0), arg(1), arg(2)}, kNone});
    } else if (p == "para" || p == "perp") {
        if (n == 2) out.push_back({p, {arg(0), arg(1)}, kNone});
        else out.push_back({p, {PlanArg::line_of(ob(0), ob(1)), PlanArg::line_of(ob(2), ob(3))}, kNone});
    } else if (p == "eqangle") {
        if (n == 4) out.push_back({p, {arg(0), arg(1), arg(2), arg(3)}, kNone});
        else out.push_back({p, {PlanArg::line_of(ob(0), ob(1)), PlanArg::line_of(ob(2), ob(3)),
                                PlanArg::line_of(ob(4), ob(5)), PlanArg::line_of(ob(6), ob(7))}, kNone});
    } else if (p == "circumcenter") {
        out.push_back({"cong", {arg(0), arg(1), arg(0), arg(2)}, kNone});
        out.push_back({"cong", {arg(0), arg(2), arg(0), arg(3)}, kNone});
    } else {
        throw ElaborationError("goal predicate '" + p + "' has no primitive expansion");
    }
    return out;
}

} // namespace

ConstructionPlan elaborate(const ValidatedProgram& v) {
    ConstructionPlan plan;
    Elab e{plan};
    for (size_t i = 0; i < v.program.statements.size(); ++i) {
        e.stmt_idx = uint32_t(i);
        e.statement(v.program.statements[i]);
    }
    plan.n_statements = v.program.statements.size();
    plan.base_statements = plan.n_statements;
    plan.goal = goal_facts(plan, v.program.goal);
    for (const auto& gf : plan.goal)
        for (const auto& a : gf.args)
            if (a.obj == kNone) throw ElaborationError("goal references an unknown object");
    return plan;
}

void extend_plan(ConstructionPlan& plan, const std::vector<Statement>& aux) {
    Elab e{plan};
    for (const auto& st : aux) {
        e.stmt_idx = uint32_t(plan.n_statements++);
        for (const auto& n : st.lhs_names)
            if (plan.index.count(n))
                throw ElaborationError("auxiliary name collision: " + n);
        e.statement(st);
    }
}

} // namespace hageo::glang
