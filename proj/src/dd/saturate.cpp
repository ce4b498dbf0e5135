#include "hageo/dd/saturate.hpp"

#include <algorithm>

#include "hageo/util/log.hpp"

namespace hageo::dd {

using graph::Args;
using graph::DeductionGraph;
using graph::FactId;
using graph::Justification;
using graph::kNoFact;
using graph::kNoObj;
using graph::ObjId;
using graph::Pred;

namespace {

struct Matcher {
    DeductionGraph& g;
    const Rule& r;
    int rule_idx;
    uint32_t since;
    std::vector<ObjId> bind;
    std::vector<FactId> matched;          // fact per antecedent
    std::vector<std::vector<FactId>> support;  // line-membership facts per antecedent
    int added = 0;

    const numeric::Diagram* diag() const { return g.guard_diagram(); }
    double margin() const { return g.guard_config() ? g.guard_config()->tau_margin : 1e-4; }

    bool term_kind_ok(const Term& t, ObjId obj) const {
        if (t.line_of) return g.kind(obj) == glang::ObjKind::Line;
        return g.kind(obj) == r.var_kinds[t.v0];
    }

    // ---- side conditions -------------------------------------------------
    numeric::Vec2 pt(uint8_t v) const { return g.coords_of(bind[v]).pt; }

    numeric::LineN term_line(const Term& t) const {
        if (t.line_of) return numeric::LineN::through(pt(t.v0), pt(t.v1));
        return g.coords_of(bind[t.v0]).line;
    }

    bool eval_side(const SideCond& s) const {
        if (!diag()) {
            // symbolic fallback for diagram-free graphs (synthetic tests)
            switch (s.kind) {
                case SideCond::Kind::Distinct:
                    return g.find(bind[s.args[0].v0]) != g.find(bind[s.args[1].v0]);
                case SideCond::Kind::NonColl: {
                    Args a = graph::make_args({bind[s.args[0].v0], bind[s.args[1].v0], bind[s.args[2].v0]});
                    if (a.a[0] == a.a[1] || a.a[0] == a.a[2] || a.a[1] == a.a[2]) return false;
                    return !g.has_fact(Pred::Coll, a);
                }
                case SideCond::Kind::NotPara: {
                    ObjId l1 = s.args[0].line_of ? g.line_through(bind[s.args[0].v0], bind[s.args[0].v1])
                                                 : g.find(bind[s.args[0].v0]);
                    ObjId l2 = s.args[1].line_of ? g.line_through(bind[s.args[1].v0], bind[s.args[1].v1])
                                                 : g.find(bind[s.args[1].v0]);
                    if (l1 == kNoObj || l2 == kNoObj) return true;
                    if (l1 == l2) return false;
                    return !g.has_fact(Pred::Para, graph::make_args({l1, l2}));
                }
                default:
                    return false;  // orientation needs a diagram
            }
        }
        double sc = diag()->scale;
        switch (s.kind) {
            case SideCond::Kind::Distinct:
                return numeric::dist(pt(s.args[0].v0), pt(s.args[1].v0)) > margin() * sc;
            case SideCond::Kind::NonColl: {
                numeric::Vec2 a = pt(s.args[0].v0), b = pt(s.args[1].v0), c = pt(s.args[2].v0);
                return std::abs((b - a).cross(c - a)) > margin() * sc * sc;
            }
            case SideCond::Kind::NotPara: {
                double d = numeric::line_angle(term_line(s.args[0])) -
                           numeric::line_angle(term_line(s.args[1]));
                return std::abs(std::sin(d)) > margin();
            }
            case SideCond::Kind::SameClock:
            case SideCond::Kind::OppClock: {
                numeric::Vec2 a = pt(s.args[0].v0), b = pt(s.args[1].v0), c = pt(s.args[2].v0);
                numeric::Vec2 d = pt(s.args[3].v0), e = pt(s.args[4].v0), f = pt(s.args[5].v0);
                double c1 = (b - a).cross(c - a), c2 = (e - d).cross(f - d);
                double lim = margin() * sc * sc;
                if (std::abs(c1) < lim || std::abs(c2) < lim) return false;
                bool same = (c1 > 0) == (c2 > 0);
                return s.kind == SideCond::Kind::SameClock ? same : !same;
            }
        }
        return false;
    }

    // ---- consequent --------------------------------------------------------
    void fire() {
        for (const auto& s : r.sides)
            if (!eval_side(s)) return;
        Args cargs;
        for (const Term& t : r.consequent.args) {
            ObjId o;
            if (t.line_of) {
                ObjId a = bind[t.v0], b = bind[t.v1];
                if (g.coincident(a, b)) return;
                o = g.intern_line(a, b);
            } else {
                o = bind[t.v0];
            }
            cargs.a[cargs.n++] = o;
        }
        Justification j;
        j.kind = Justification::Kind::Rule;
        j.rule = uint16_t(rule_idx);
        for (size_t i = 0; i < matched.size(); ++i) {
            j.antecedents.push_back(matched[i]);
            for (FactId s : support[i]) j.antecedents.push_back(s);
        }
        std::sort(j.antecedents.begin(), j.antecedents.end());
        j.antecedents.erase(std::unique(j.antecedents.begin(), j.antecedents.end()),
                            j.antecedents.end());
        if (r.consequent.pred == Pred::Same) {
            if (g.find(cargs.a[0]) == g.find(cargs.a[1])) return;
        }
        size_t viol = g.violations().size();
        if (g.assert_fact(r.consequent.pred, cargs, std::move(j)) != kNoFact) ++added;
        if (g.violations().size() > viol && log::threshold() <= log::Level::Debug) {
            std::string b;
            for (size_t v = 0; v < r.var_names.size(); ++v)
                b += r.var_names[v] + "=" + (bind[v] == kNoObj ? "?" : g.name(bind[v])) + " ";
            log::debug("gate rejected %s with %s antecedents:", r.name.c_str(), b.c_str());
            for (size_t i = 0; i < matched.size(); ++i)
                if (matched[i] != kNoFact)
                    log::debug("   %s", g.describe_fact(matched[i]).c_str());
        }
    }

    // ---- unification -------------------------------------------------------
    // membership source facts used when a line term binds beyond the line's
    // definitional points; cited so proofs carry the collinearity assumptions
    FactId member_src(ObjId line, ObjId p) const {
        const auto& o = g.obj(g.find(line));
        for (size_t i = 0; i < o.members.size(); ++i)
            if (o.members[i] == g.find(p)) return o.member_src[i];
        return kNoFact;
    }

    void unify_terms(size_t ai, const std::vector<Term>& ts, const Args& fargs, size_t pos,
                     std::vector<std::pair<uint8_t, ObjId>>& trail) {
        if (pos == ts.size()) {
            match_next(ai + 1);
            return;
        }
        const Term& t = ts[pos];
        ObjId fobj = fargs.a[pos];
        auto bind_var = [&](uint8_t v, ObjId o) -> bool {
            o = g.find(o);
            if (bind[v] != kNoObj) return g.find(bind[v]) == o;
            if (g.kind(o) != r.var_kinds[v]) return false;
            bind[v] = o;
            trail.push_back({v, o});
            return true;
        };
        auto undo_to = [&](size_t n) {
            while (trail.size() > n) {
                bind[trail.back().first] = kNoObj;
                trail.pop_back();
            }
        };
        if (!t.line_of) {
            size_t mark = trail.size();
            if (bind_var(t.v0, fobj)) unify_terms(ai, ts, fargs, pos + 1, trail);
            undo_to(mark);
            return;
        }
        if (g.kind(fobj) != glang::ObjKind::Line) return;
        // snapshot: asserting the consequent can grow the member list
        const std::vector<ObjId> members = g.members_of(fobj);
        auto try_pair = (
            [&](ObjId p, ObjId q) {
                size_t mark = trail.size();
                if (bind_var(t.v0, p) && bind_var(t.v1, q) && !g.coincident(p, q)) {
                    FactId s1 = member_src(fobj, p), s2 = member_src(fobj, q);
                    size_t smark = support[ai].size();
                    if (s1 != kNoFact) support[ai].push_back(s1);
                    if (s2 != kNoFact) support[ai].push_back(s2);
                    unify_terms(ai, ts, fargs, pos + 1, trail);
                    support[ai].resize(smark);
                }
                undo_to(mark);
            });
        bool b0 = bind[t.v0] != kNoObj, b1 = bind[t.v1] != kNoObj;
        auto is_member = [&](ObjId p) {
            p = g.find(p);
            return std::find(members.begin(), members.end(), p) != members.end();
        };
        if (b0 && b1) {
            if (g.line_through(bind[t.v0], bind[t.v1]) == g.find(fobj)) try_pair(bind[t.v0], bind[t.v1]);
        } else if (b0) {
            if (is_member(bind[t.v0]))
                for (ObjId m : members) try_pair(bind[t.v0], m);
        } else if (b1) {
            if (is_member(bind[t.v1]))
                for (ObjId m : members) try_pair(m, bind[t.v1]);
        } else {
            for (ObjId p : members)
                for (ObjId q : members)
                    if (p != q) try_pair(p, q);
        }
    }

    void match_atom_against(size_t ai, FactId f) {
        Pred p;
        Args args;
        {
            const auto& rec = g.fact(f);
            if (rec.shadowed || rec.trivial) return;
            p = rec.pred;
            args = rec.args;
        }
        matched[ai] = f;
        for (const Args& v : graph::arg_variants(p, args)) {
            std::vector<std::pair<uint8_t, ObjId>> trail;
            unify_terms(ai, r.antecedents[ai].args, v, 0, trail);
        }
        matched[ai] = kNoFact;
    }

    void match_next(size_t ai) {
        if (ai == r.antecedents.size()) {
            fire();
            return;
        }
        const Atom& atom = r.antecedents[ai];
        // candidate narrowing through any bound argument object
        ObjId anchor = kNoObj;
        for (const Term& t : atom.args) {
            if (t.line_of) {
                if (bind[t.v0] != kNoObj && bind[t.v1] != kNoObj) {
                    ObjId l = g.line_through(bind[t.v0], bind[t.v1]);
                    if (l == kNoObj) return;  // no such line handle: no fact can match
                    anchor = l;
                    break;
                }
            } else if (bind[t.v0] != kNoObj) {
                anchor = g.find(bind[t.v0]);
                break;
            }
        }
        uint32_t min_stamp = (ai == 0) ? since : 0;
        // snapshot the candidate list: firing consequents mutates the indexes
        std::vector<FactId> cands;
        if (anchor != kNoObj) {
            for (FactId f : g.facts_touching(anchor)) {
                const auto& rec = g.fact(f);
                if (rec.pred == atom.pred && rec.stamp > min_stamp) cands.push_back(f);
            }
        } else {
            for (FactId f : g.facts_of(atom.pred))
                if (g.fact(f).stamp > min_stamp) cands.push_back(f);
        }
        for (FactId f : cands) {
            const auto& rec = g.fact(f);
            if (rec.pred != atom.pred || rec.shadowed || rec.trivial) continue;
            match_atom_against(ai, f);
        }
    }

    // semi-naive: antecedent `fresh` is matched only against new facts; the
    // antecedent list is rotated so that the fresh one is matched first
    int run() {
        size_t n = r.antecedents.size();
        bind.assign(r.var_names.size(), kNoObj);
        matched.assign(n, kNoFact);
        support.assign(n, {});
        if (since == 0) {
            match_next(0);
            return added;
        }
        // rotate: match each antecedent as the "fresh" one
        Rule rot = r;
        for (size_t fresh = 0; fresh < n; ++fresh) {
            rot.antecedents.clear();
            rot.antecedents.push_back(r.antecedents[fresh]);
            for (size_t i = 0; i < n; ++i)
                if (i != fresh) rot.antecedents.push_back(r.antecedents[i]);
            Matcher m{g, rot, rule_idx, since};
            m.bind.assign(r.var_names.size(), kNoObj);
            m.matched.assign(n, kNoFact);
            m.support.assign(n, {});
            m.match_next(0);
            added += m.added;
        }
        return added;
    }
};

} // namespace

int apply_rule(DeductionGraph& g, const Rule& r, int rule_idx, uint32_t since) {
    Matcher m{g, r, rule_idx, since};
    return m.run();
}

SaturationReport saturate(DeductionGraph& g, const RuleSet& rules, Clock::time_point deadline,
                          const Goals& goals) {
    SaturationReport rep;
    auto t0 = Clock::now();
    if (goals_met(g, goals)) {
        rep.stopped_by = SaturationReport::StoppedBy::Goal;
        rep.wall_time_s = std::chrono::duration<double>(Clock::now() - t0).count();
        return rep;
    }
    uint32_t prev_mark = 0;
    for (;;) {
        uint32_t mark = g.stamp();
        int added = 0;
        for (size_t ri = 0; ri < rules.rules.size(); ++ri) {
            const Rule& r = rules.rules[ri];
            if (!r.enabled) continue;
            if (Clock::now() > deadline) {
                rep.stopped_by = SaturationReport::StoppedBy::Timeout;
                rep.wall_time_s = std::chrono::duration<double>(Clock::now() - t0).count();
                return rep;
            }
            int k = apply_rule(g, r, int(ri), prev_mark);
            if (k) rep.rule_fire_counts[r.name] += k;
            added += k;
            if (goals_met(g, goals)) {
                rep.facts_added += added;
                rep.stopped_by = SaturationReport::StoppedBy::Goal;
                rep.wall_time_s = std::chrono::duration<double>(Clock::now() - t0).count();
                return rep;
            }
        }
        rep.rounds++;
        rep.facts_added += added;
        if (added == 0) break;
        prev_mark = mark;
    }
    rep.stopped_by = SaturationReport::StoppedBy::Fixpoint;
    rep.wall_time_s = std::chrono::duration<double>(Clock::now() - t0).count();
    return rep;
}

} // namespace hageo::dd
