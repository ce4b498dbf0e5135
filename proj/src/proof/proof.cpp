#include "hageo/proof/proof.hpp"

#include <algorithm>
#include <map>

#include "hageo/ar/ddar.hpp"
#include "hageo/util/log.hpp"

namespace hageo::proof {

using graph::Args;
using graph::DeductionGraph;
using graph::FactId;
using graph::Justification;
using graph::kNoFact;
using graph::kNoObj;
using graph::ObjId;
using graph::Pred;

namespace {

// scratch graph: plan objects and structural members, no construction facts
DeductionGraph scratch_graph(const TraceContext& ctx) {
    glang::ConstructionPlan bare = *ctx.plan;
    bare.facts.clear();
    return graph::build_graph(bare, ctx.diagram, ctx.cfg, graph::GuardMode::Off);
}

Step::By by_of(const Justification& j) {
    switch (j.kind) {
        case Justification::Kind::Premise: return Step::By::Premise;
        case Justification::Kind::AuxDef: return Step::By::AuxDef;
        case Justification::Kind::Rule: return Step::By::Rule;
        case Justification::Kind::Algebraic: return Step::By::Algebraic;
        case Justification::Kind::LineMembers: return Step::By::Lines;
        case Justification::Kind::CircleMembers: return Step::By::Circles;
        case Justification::Kind::CenterUnique: return Step::By::Center;
    }
    return Step::By::Premise;
}

// equality vector of a fact in an AR system's variable space
bool ar_target(ar::LinearSystem& sys, DeductionGraph& g, Pred p, const Args& a, ar::Vec& v) {
    using ar::Rat;
    auto avar = [&](ObjId l) { return sys.var({g.find(l), kNoObj}); };
    auto svar = [&](ObjId x, ObjId y) {
        x = g.find(x); y = g.find(y);
        return sys.var({std::min(x, y), std::max(x, y)});
    };
    switch (p) {
        case Pred::EqAngle:
            if (sys.kind != ar::ArKind::Angle) return false;
            ar::vec_add(v, avar(a.a[0]), Rat(1));
            ar::vec_add(v, avar(a.a[1]), Rat(-1));
            ar::vec_add(v, avar(a.a[2]), Rat(-1));
            ar::vec_add(v, avar(a.a[3]), Rat(1));
            return true;
        case Pred::Para:
            if (sys.kind != ar::ArKind::Angle) return false;
            ar::vec_add(v, avar(a.a[0]), Rat(1));
            ar::vec_add(v, avar(a.a[1]), Rat(-1));
            return true;
        case Pred::Perp:
            if (sys.kind != ar::ArKind::Angle) return false;
            ar::vec_add(v, avar(a.a[0]), Rat(1));
            ar::vec_add(v, avar(a.a[1]), Rat(-1));
            ar::vec_add(v, ar::kConstCol, Rat(-1, 2));
            return true;
        case Pred::Cong:
            if (sys.kind == ar::ArKind::Angle) return false;
            ar::vec_add(v, svar(a.a[0], a.a[1]), Rat(1));
            ar::vec_add(v, svar(a.a[2], a.a[3]), Rat(-1));
            return true;
        case Pred::EqRatio:
            if (sys.kind != ar::ArKind::Ratio) return false;
            ar::vec_add(v, svar(a.a[0], a.a[1]), Rat(1));
            ar::vec_add(v, svar(a.a[2], a.a[3]), Rat(-1));
            ar::vec_add(v, svar(a.a[4], a.a[5]), Rat(-1));
            ar::vec_add(v, svar(a.a[6], a.a[7]), Rat(1));
            return true;
        default:
            return false;
    }
}

bool ar_residual_ok(ar::ArKind kind, Pred p, const ar::Vec& residual) {
    using ar::Rat;
    if (residual.empty()) return true;
    if (residual.size() != 1 || residual[0].first != ar::kConstCol) return false;
    if (kind != ar::ArKind::Angle) return false;
    Rat f = ar::frac_part(residual[0].second);
    // a leftover integer multiple of pi vanishes mod pi; perp targets folded
    // their half already
    return f == 0;
}

} // namespace

bool rederive_step(const TraceContext& ctx, Pred pred, const Args& args, Step::By by,
                   const std::string& rule_name,
                   const std::vector<std::pair<Pred, Args>>& antecedents) {
    if (by == Step::By::Premise || by == Step::By::AuxDef) {
        // must be a construction-level fact of the plan
        DeductionGraph ref = graph::build_graph(*ctx.plan, ctx.diagram, ctx.cfg,
                                                graph::GuardMode::Off);
        FactId f = ref.find_fact(pred, args);
        if (f == kNoFact) return false;
        auto k = ref.fact(f).just.kind;
        return k == Justification::Kind::Premise || k == Justification::Kind::AuxDef;
    }

    DeductionGraph s = scratch_graph(ctx);
    Justification j;
    j.kind = Justification::Kind::Premise;
    for (const auto& [p, a] : antecedents)
        s.assert_fact(p, a, j);

    switch (by) {
        case Step::By::Lines:
        case Step::By::Circles:
        case Step::By::Center:
            // membership materialization must reproduce the fact (merges from
            // center identification land as object unification)
            if (by == Step::By::Center && pred == Pred::Same)
                return s.find(args.a[0]) == s.find(args.a[1]);
            return s.has_fact(pred, args);
        case Step::By::Rule: {
            const dd::Rule* r = ctx.rules->by_name(rule_name);
            if (!r) return false;
            if (s.has_fact(pred, args)) return true;  // already implied structurally
            dd::apply_rule(s, *r, ctx.rules->index_of(rule_name));
            if (pred == Pred::Same) {
                Args c = args;
                return s.find(c.a[0]) == s.find(c.a[1]);
            }
            return s.has_fact(pred, args);
        }
        case Step::By::Algebraic: {
            for (ar::ArKind kind : {ar::ArKind::Angle, ar::ArKind::Ratio, ar::ArKind::Length}) {
                ar::LinearSystem sys = ar::encode_facts(s, kind);
                ar::Vec v;
                if (!ar_target(sys, s, pred, args, v)) continue;
                try {
                    auto basis = ar::reduce(sys);
                    auto e = basis.express(v);
                    if (ar_residual_ok(kind, pred, e.residual)) return true;
                } catch (const ar::InconsistentSystem&) {
                    return false;
                }
            }
            return false;
        }
        default:
            return false;
    }
}

ProofDag traceback(const DeductionGraph& g, const TraceContext& ctx,
                   const std::vector<std::pair<Pred, Args>>& goals) {
    std::vector<FactId> goal_ids;
    for (const auto& [p, a] : goals) {
        FactId f = g.find_fact(p, a);
        if (f == kNoFact) throw GoalNotProved("goal fact is not in the graph");
        goal_ids.push_back(f);
    }

    // collect the reachable set
    std::vector<FactId> order;
    std::map<FactId, bool> seen;
    std::vector<FactId> stack = goal_ids;
    while (!stack.empty()) {
        FactId f = stack.back();
        stack.pop_back();
        if (seen.count(f)) continue;
        seen[f] = true;
        order.push_back(f);
        for (FactId a : g.fact(f).just.antecedents) stack.push_back(a);
    }
    std::sort(order.begin(), order.end());  // antecedents have smaller ids

    auto fact_pair = [&](FactId f) {
        return std::make_pair(g.fact(f).pred, g.fact(f).args);
    };

    // greedy citation minimization to a deletion-minimal antecedent list
    std::map<FactId, std::vector<FactId>> min_ants;
    for (FactId f : order) {
        const auto& rec = g.fact(f);
        std::vector<FactId> ants = rec.just.antecedents;
        Step::By by = by_of(rec.just);
        if (by == Step::By::Algebraic || by == Step::By::Rule || by == Step::By::Lines ||
            by == Step::By::Circles) {
            std::string rname =
                by == Step::By::Rule ? ctx.rules->rules[rec.just.rule].name : std::string();
            bool changed = true;
            while (changed) {
                changed = false;
                for (size_t i = ants.size(); i-- > 0;) {
                    std::vector<FactId> trial = ants;
                    trial.erase(trial.begin() + long(i));
                    std::vector<std::pair<Pred, Args>> afacts;
                    for (FactId a : trial) afacts.push_back(fact_pair(a));
                    if (rederive_step(ctx, rec.pred, rec.args, by, rname, afacts)) {
                        ants = std::move(trial);
                        changed = true;
                    }
                }
            }
        }
        min_ants[f] = std::move(ants);
    }

    // re-collect reachability with minimized citations (some facts may drop)
    seen.clear();
    std::vector<FactId> keep;
    stack = goal_ids;
    while (!stack.empty()) {
        FactId f = stack.back();
        stack.pop_back();
        if (seen.count(f)) continue;
        seen[f] = true;
        keep.push_back(f);
        for (FactId a : min_ants[f]) stack.push_back(a);
    }
    std::sort(keep.begin(), keep.end());

    // render
    ProofDag out;
    std::map<FactId, uint32_t> index;
    auto obj_token = [&](ObjId x) -> std::string {
        x = g.find(x);
        if (g.kind(x) == glang::ObjKind::Point || g.obj(x).plan_step != glang::kNone)
            return g.name(x);
        const auto& o = g.obj(x);
        if (g.kind(x) == glang::ObjKind::Line && o.members.size() >= 2)
            return g.name(o.members[0]) + "~" + g.name(o.members[1]);
        return g.name(x);
    };
    for (FactId f : keep) {
        const auto& rec = g.fact(f);
        Step st;
        st.by = by_of(rec.just);
        st.pred = graph::pred_name(rec.pred);
        for (int i = 0; i < rec.args.n; ++i) st.args.push_back(obj_token(rec.args.a[i]));
        if (st.by == Step::By::Rule) st.rule = ctx.rules->rules[rec.just.rule].name;
        if (st.by == Step::By::Algebraic)
            st.ar_kind = ar::ar_kind_name(ar::ArKind(rec.just.ar_kind));
        for (FactId a : min_ants[f]) st.from.push_back(index.at(a));
        index[f] = uint32_t(out.steps.size());
        out.steps.push_back(std::move(st));
    }
    for (FactId gf : goal_ids) out.conclusions.push_back(index.at(gf));
    return out;
}

} // namespace hageo::proof
