#include "hageo/heuristic/candidates.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

namespace hageo::heuristic {

using glang::ConstructionPlan;
using glang::kNone;
using glang::PlanStep;
using glang::Statement;
using numeric::CircleN;
using numeric::Diagram;
using numeric::dist;
using numeric::LineN;
using numeric::NumericConfig;
using numeric::Vec2;

namespace {

struct Universe {
    const ConstructionPlan& plan;
    const Diagram& d;
    const NumericConfig& cfg;
    std::vector<uint32_t> pts;          // plan ids of points
    std::vector<CurveRef> curves;
    double scale;

    double margin() const { return cfg.tau_margin * scale; }
    double incid() const { return cfg.tau_rel * scale * 50; }   // detection band

    bool same_line(const LineN& a, const LineN& b) const {
        double s = std::abs(a.n.cross(b.n));
        if (s > cfg.tau_margin) return false;
        double off = a.n.dot(b.n) > 0 ? std::abs(a.c - b.c) : std::abs(a.c + b.c);
        return off < margin();
    }
    bool same_circle(const CircleN& a, const CircleN& b) const {
        return dist(a.c, b.c) < margin() && std::abs(a.r - b.r) < margin();
    }

    bool on_curve(const CurveRef& c, Vec2 p) const {
        if (c.is_line) return std::abs(c.line.signed_dist(p)) < incid();
        return std::abs(dist(c.circle.c, p) - c.circle.r) < incid();
    }

    int add_line(const LineN& l, uint32_t wa, uint32_t wb, uint32_t named) {
        for (size_t i = 0; i < curves.size(); ++i)
            if (curves[i].is_line && same_line(curves[i].line, l)) {
                if (named != kNone && curves[i].named_obj == kNone) curves[i].named_obj = named;
                return int(i);
            }
        CurveRef c;
        c.is_line = true;
        c.line = l;
        c.named_obj = named;
        c.a = wa; c.b = wb;
        curves.push_back(c);
        return int(curves.size()) - 1;
    }

    int add_circle(const CircleN& w, uint32_t wa, uint32_t wb, uint32_t wc, uint32_t named) {
        for (size_t i = 0; i < curves.size(); ++i)
            if (!curves[i].is_line && same_circle(curves[i].circle, w)) {
                if (named != kNone && curves[i].named_obj == kNone) curves[i].named_obj = named;
                return int(i);
            }
        CurveRef c;
        c.is_line = false;
        c.circle = w;
        c.named_obj = named;
        c.a = wa; c.b = wb; c.c = wc;
        curves.push_back(c);
        return int(curves.size()) - 1;
    }

    void build() {
        scale = d.scale;
        for (uint32_t i = 0; i < plan.steps.size(); ++i)
            if (plan.steps[i].kind == glang::ObjKind::Point) pts.push_back(i);
        // named curves first so handles are preferred
        for (uint32_t i = 0; i < plan.steps.size(); ++i) {
            const auto& st = plan.steps[i];
            if (st.kind == glang::ObjKind::Line) add_line(d.at(i).line, kNone, kNone, i);
            else if (st.kind == glang::ObjKind::Circle) add_circle(d.at(i).circle, kNone, kNone, kNone, i);
        }
        for (size_t x = 0; x < pts.size(); ++x)
            for (size_t y = x + 1; y < pts.size(); ++y) {
                Vec2 a = d.point(pts[x]), b = d.point(pts[y]);
                if (dist(a, b) < margin()) continue;
                add_line(LineN::through(a, b), pts[x], pts[y], kNone);
            }
        for (size_t x = 0; x < pts.size(); ++x)
            for (size_t y = x + 1; y < pts.size(); ++y)
                for (size_t z = y + 1; z < pts.size(); ++z) {
                    Vec2 a = d.point(pts[x]), b = d.point(pts[y]), c = d.point(pts[z]);
                    if (std::abs((b - a).cross(c - a)) < margin() * scale) continue;
                    auto o = numeric::circumcenter(a, b, c);
                    if (!o) continue;
                    add_circle({*o, dist(*o, a)}, pts[x], pts[y], pts[z], kNone);
                }
        for (auto& c : curves)
            for (uint32_t p : pts)
                if (on_curve(c, d.point(p))) c.on_pts.push_back(p);
    }

    std::string curve_text(const CurveRef& c) const {
        std::ostringstream os;
        if (c.named_obj != kNone) {
            os << plan.steps[c.named_obj].name;
        } else if (c.is_line) {
            os << "line(" << plan.steps[c.on_pts.at(0)].name << ","
               << plan.steps[c.on_pts.at(1)].name << ")";
        } else {
            os << "circle(" << plan.steps[c.on_pts.at(0)].name << ","
               << plan.steps[c.on_pts.at(1)].name << "," << plan.steps[c.on_pts.at(2)].name << ")";
        }
        return os.str();
    }
};

struct Enumerator {
    const ConstructionPlan& plan;
    const Diagram& d;
    const graph::DeductionGraph& g;
    const HeuristicConfig& hc;
    Universe u;
    std::vector<AuxCandidate> out;
    int fresh = 1;

    Enumerator(const ConstructionPlan& p, const Diagram& dd, const graph::DeductionGraph& gg,
               const HeuristicConfig& h)
        : plan(p), d(dd), g(gg), hc(h), u{p, dd, h.numeric, {}, {}, 0} {
        u.build();
        // fresh aux names continue after any existing aux points
        while (plan.index.count("aux" + std::to_string(fresh))) ++fresh;
    }

    std::string fresh_name() { return "aux" + std::to_string(fresh++); }

    uint32_t near_named(Vec2 p) const {
        for (uint32_t q : u.pts)
            if (dist(d.point(q), p) < u.margin()) return q;
        return kNone;
    }

    const std::string& pname(uint32_t id) const { return plan.steps[id].name; }

    // statements that name a universe curve so it can be intersected;
    // returns the identifier to reference
    std::string name_curve(const CurveRef& c, std::vector<Statement>& stmts) {
        if (c.named_obj != kNone) return pname(c.named_obj);
        Statement st;
        if (c.is_line) {
            st.lhs_names = {fresh_name()};
            st.constructor = "line";
            st.args = {pname(c.on_pts.at(0)), pname(c.on_pts.at(1))};
            stmts.push_back(st);
            return st.lhs_names[0];
        }
        // a circle needs its circumcenter first
        Statement oc;
        oc.lhs_names = {fresh_name()};
        oc.constructor = "circumcenter";
        oc.args = {pname(c.on_pts.at(0)), pname(c.on_pts.at(1)), pname(c.on_pts.at(2))};
        stmts.push_back(oc);
        Statement cc;
        cc.lhs_names = {fresh_name()};
        cc.constructor = "circumcircle";
        cc.args = oc.args;
        stmts.push_back(cc);
        return cc.lhs_names[0];
    }

    // incidences of a prospective point, excluding syntactically implied curves
    std::vector<int> novel_incidences(Vec2 at, const std::vector<int>& trivial) {
        std::vector<int> nov;
        for (size_t i = 0; i < u.curves.size(); ++i) {
            if (!u.on_curve(u.curves[i], at)) continue;
            if (std::find(trivial.begin(), trivial.end(), int(i)) != trivial.end()) continue;
            nov.push_back(int(i));
        }
        return nov;
    }

    // confirmation: extend the plan with the construction and verify each
    // novelty incidence across independently sampled diagrams
    bool confirm(const std::vector<Statement>& stmts, const std::string& name,
                 const std::vector<int>& novelty) {
        if (!hc.confirm) return true;
        ConstructionPlan ext = plan;
        try {
            glang::extend_plan(ext, stmts);
        } catch (const glang::ElaborationError&) {
            return false;
        }
        uint32_t x = ext.id_of(name);
        for (int ci : novelty) {
            const CurveRef& c = u.curves[ci];
            glang::PlanFact f;
            if (c.is_line) {
                f.pred = "coll";
                f.args = {glang::PlanArg::of(x), glang::PlanArg::of(c.on_pts.at(0)),
                          glang::PlanArg::of(c.on_pts.at(1))};
            } else {
                f.pred = "cyclic";
                f.args = {glang::PlanArg::of(x), glang::PlanArg::of(c.on_pts.at(0)),
                          glang::PlanArg::of(c.on_pts.at(1)), glang::PlanArg::of(c.on_pts.at(2))};
            }
            try {
                if (!numeric::confirm_across_seeds(ext, f, hc.numeric, d.seed)) return false;
            } catch (const std::exception&) {
                return false;
            }
        }
        return true;
    }

    void push(Category cat, std::vector<Statement> stmts, const std::string& bound,
              const std::vector<int>& novelty, Vec2 at, const std::string& wit) {
        AuxCandidate c;
        c.category = cat;
        c.construction = std::move(stmts);
        c.witnesses = wit;
        for (int ci : novelty) c.novelty.push_back(u.curve_text(u.curves[ci]));
        c.at = at;
        if (!confirm(c.construction, bound, novelty)) return;
        out.push_back(std::move(c));
    }

    // ---- concurrences (categories 1 and 2) ---------------------------------
    void concurrences() {
        struct Cluster {
            Vec2 at;
            std::vector<int> curves;
        };
        std::vector<Cluster> clusters;
        auto feed = [&](Vec2 p) {
            for (auto& cl : clusters)
                if (dist(cl.at, p) < u.margin()) return;
            Cluster cl;
            cl.at = p;
            for (size_t i = 0; i < u.curves.size(); ++i)
                if (u.on_curve(u.curves[i], p)) cl.curves.push_back(int(i));
            if (cl.curves.size() >= 3) clusters.push_back(std::move(cl));
        };
        for (size_t i = 0; i < u.curves.size(); ++i)
            for (size_t j = i + 1; j < u.curves.size(); ++j) {
                const CurveRef &a = u.curves[i], &b = u.curves[j];
                Vec2 sols[2];
                int n = 0;
                if (a.is_line && b.is_line) {
                    auto x = numeric::inter_ll(a.line, b.line);
                    if (x) sols[n++] = *x;
                } else if (a.is_line || b.is_line) {
                    n = numeric::inter_lc(a.is_line ? a.line : b.line,
                                          a.is_line ? b.circle : a.circle, sols);
                } else {
                    n = numeric::inter_cc(a.circle, b.circle, sols);
                }
                for (int s = 0; s < n; ++s) feed(sols[s]);
            }
        for (const auto& cl : clusters) {
            if (near_named(cl.at) != kNone) continue;  // identical-point territory
            int nlines = 0, ncircles = 0;
            for (int ci : cl.curves) (u.curves[ci].is_line ? nlines : ncircles)++;
            if (nlines + ncircles < 3 || nlines < 1) continue;
            std::vector<Statement> stmts;
            std::string wit;
            for (int ci : cl.curves) wit += (wit.empty() ? "" : " ") + u.curve_text(u.curves[ci]);
            if (ncircles == 0) {
                // category 1: intersect the first two lines
                int l1 = cl.curves[0], l2 = cl.curves[1];
                std::string n1 = name_curve(u.curves[l1], stmts);
                std::string n2 = name_curve(u.curves[l2], stmts);
                Statement st;
                st.lhs_names = {fresh_name()};
                st.constructor = "intersection";
                st.args = {n1, n2};
                stmts.push_back(st);
                std::vector<int> novelty;
                for (int ci : cl.curves)
                    if (ci != l1 && ci != l2) novelty.push_back(ci);
                push(Category::LineConcurrence, std::move(stmts), st.lhs_names[0], novelty, cl.at,
                     wit);
            } else {
                // category 2: intersect a line with a circle, binding both
                // intersection points unless one is already named
                int li = -1, wi = -1;
                for (int ci : cl.curves)
                    if (u.curves[ci].is_line && li < 0) li = ci;
                for (int ci : cl.curves)
                    if (!u.curves[ci].is_line && wi < 0) wi = ci;
                std::string nl = name_curve(u.curves[li], stmts);
                std::string nw = name_curve(u.curves[wi], stmts);
                Vec2 sols[2];
                int n = numeric::inter_lc(u.curves[li].line, u.curves[wi].circle, sols);
                if (n == 0) continue;
                Vec2 other = dist(sols[0], cl.at) < dist(sols[1], cl.at) ? sols[1] : sols[0];
                Statement st;
                st.constructor = "intersection";
                st.args = {nl, nw};
                std::string bound = fresh_name();
                if (n == 2 && near_named(other) == kNone) {
                    st.lhs_names = {bound, fresh_name()};
                } else {
                    st.lhs_names = {bound};
                }
                stmts.push_back(st);
                std::vector<int> novelty;
                for (int ci : cl.curves)
                    if (ci != li && ci != wi) novelty.push_back(ci);
                push(Category::MixedConcurrence, std::move(stmts), bound, novelty, cl.at, wit);
            }
        }
    }

    // ---- midpoints and reflections (categories 3 and 4) --------------------
    void midpoints_and_reflections() {
        for (size_t x = 0; x < u.pts.size(); ++x)
            for (size_t y = 0; y < u.pts.size(); ++y) {
                if (x == y) continue;
                uint32_t P = u.pts[x], Q = u.pts[y];
                Vec2 a = d.point(P), b = d.point(Q);
                if (dist(a, b) < u.margin()) continue;
                std::vector<int> trivial;
                for (size_t i = 0; i < u.curves.size(); ++i)
                    if (u.curves[i].is_line && u.same_line(u.curves[i].line, LineN::through(a, b)))
                        trivial.push_back(int(i));
                if (x < y) {
                    Vec2 m = (a + b) / 2;
                    if (near_named(m) == kNone) {
                        auto nov = novel_incidences(m, trivial);
                        if (!nov.empty()) {
                            Statement st;
                            st.lhs_names = {fresh_name()};
                            st.constructor = "midpoint";
                            st.args = {pname(P), pname(Q)};
                            push(Category::Midpoint, {st}, st.lhs_names[0], nov, m,
                                 "midpoint " + pname(P) + " " + pname(Q));
                        }
                    }
                }
                Vec2 r = b * 2 - a;
                if (near_named(r) != kNone) continue;
                auto nov = novel_incidences(r, trivial);
                if (nov.empty()) continue;
                Statement st;
                st.lhs_names = {fresh_name()};
                st.constructor = "reflection";
                st.args = {pname(P), pname(Q)};
                push(Category::Reflection, {st}, st.lhs_names[0], nov, r,
                     "reflection of " + pname(P) + " over " + pname(Q));
            }
    }

    // ---- feet (category 5) --------------------------------------------------
    void feet() {
        for (uint32_t P : u.pts) {
            Vec2 p = d.point(P);
            for (size_t li = 0; li < u.curves.size(); ++li) {
                const CurveRef& l = u.curves[li];
                if (!l.is_line) continue;
                if (std::abs(l.line.signed_dist(p)) < u.margin()) continue;  // P on l
                Vec2 f = l.line.foot(p);
                if (near_named(f) != kNone) continue;
                std::vector<int> nov;
                for (size_t mi = 0; mi < u.curves.size(); ++mi) {
                    const CurveRef& m = u.curves[mi];
                    if (!m.is_line || mi == li) continue;
                    if (u.same_line(m.line, l.line)) continue;
                    if (std::abs(m.line.signed_dist(p)) < u.margin()) continue;  // P on m
                    if (u.on_curve(m, f)) nov.push_back(int(mi));
                }
                if (nov.empty()) continue;
                if (l.on_pts.size() < 2) continue;
                Statement st;
                st.lhs_names = {fresh_name()};
                st.constructor = "foot";
                st.args = {pname(P), pname(l.on_pts[0]), pname(l.on_pts[1])};
                push(Category::Foot, {st}, st.lhs_names[0], nov, f,
                     "foot of " + pname(P) + " on " + u.curve_text(l));
            }
        }
    }

    // ---- identical points ----------------------------------------------------
    // incidences implied by the point's own construction
    std::vector<int> syntactic_curves(uint32_t p) {
        std::vector<int> triv;
        Vec2 at = d.point(p);
        for (size_t i = 0; i < u.curves.size(); ++i) {
            const CurveRef& c = u.curves[i];
            if (!u.on_curve(c, at)) continue;
            if (construction_implies(p, c)) triv.push_back(int(i));
        }
        return triv;
    }

    bool construction_implies(uint32_t p, const CurveRef& c) {
        const PlanStep& st = plan.steps[p];
        auto is_line = [&](uint32_t a, uint32_t b) {
            return c.is_line && u.same_line(c.line, LineN::through(d.point(a), d.point(b)));
        };
        auto curve_matches = [&](uint32_t obj) {
            const auto& oc = d.at(obj);
            if (oc.kind == glang::ObjKind::Line) return c.is_line && u.same_line(c.line, oc.line);
            if (oc.kind == glang::ObjKind::Circle)
                return !c.is_line && u.same_circle(c.circle, oc.circle);
            return false;
        };
        using Op = PlanStep::Op;
        switch (st.op) {
            case Op::OnLine: case Op::OnCircle: case Op::FootPL:
                return curve_matches(st.refs.back());
            case Op::InterLL: case Op::InterLC: case Op::InterCC:
                return curve_matches(st.refs[0]) || curve_matches(st.refs[1]);
            case Op::Midpoint: case Op::Reflect:
                return is_line(st.refs[0], st.refs[1]);
            case Op::FootPPP:
                return is_line(st.refs[1], st.refs[2]);
            default:
                return false;
        }
    }

    void identical_points() {
        for (uint32_t p : u.pts) {
            auto triv = syntactic_curves(p);
            Vec2 at = d.point(p);
            std::vector<int> nontrivial, all_on;
            for (size_t i = 0; i < u.curves.size(); ++i) {
                if (!u.on_curve(u.curves[i], at)) continue;
                // skip vacuous pair lines through p itself
                if (u.curves[i].is_line && u.curves[i].named_obj == kNone &&
                    (u.curves[i].a == p || u.curves[i].b == p))
                    continue;
                if (!u.curves[i].is_line && u.curves[i].named_obj == kNone &&
                    (u.curves[i].a == p || u.curves[i].b == p || u.curves[i].c == p))
                    continue;
                all_on.push_back(int(i));
                if (std::find(triv.begin(), triv.end(), int(i)) == triv.end())
                    nontrivial.push_back(int(i));
            }
            if (nontrivial.empty() || all_on.size() < 2) continue;
            // intersect one provably-incident curve (if any) with the first
            // non-trivial one; prefer line pairs, whose uniqueness is provable
            int c2 = nontrivial[0];
            for (int ci : nontrivial)
                if (u.curves[ci].is_line) { c2 = ci; break; }
            int c1 = -1;
            for (int ci : all_on)
                if (ci != c2 && u.curves[ci].is_line && u.curves[c2].is_line) { c1 = ci; break; }
            if (c1 < 0)
                for (int ci : all_on)
                    if (ci != c2) { c1 = ci; break; }
            if (c1 < 0) continue;
            std::vector<Statement> stmts;
            std::string n1 = name_curve(u.curves[c1], stmts);
            std::string n2 = name_curve(u.curves[c2], stmts);
            Statement st;
            st.constructor = "intersection";
            st.args = {n1, n2};
            std::string bound = fresh_name();
            bool two_sol = !(u.curves[c1].is_line && u.curves[c2].is_line);
            if (two_sol) {
                // the second intersection may be elsewhere; bind both names
                st.lhs_names = {bound, fresh_name()};
            } else {
                st.lhs_names = {bound};
            }
            stmts.push_back(st);
            push(Category::IdenticalPoint, std::move(stmts), bound, nontrivial, at,
                 pname(p) + " lies on " + u.curve_text(u.curves[c2]));
        }
    }

    std::vector<AuxCandidate> run() {
        concurrences();
        midpoints_and_reflections();
        feet();
        identical_points();
        return std::move(out);
    }
};

} // namespace

std::vector<CurveRef> curve_universe(const ConstructionPlan& plan, const Diagram& d,
                                     const NumericConfig& cfg) {
    Universe u{plan, d, cfg, {}, {}, 0};
    u.build();
    return std::move(u.curves);
}

std::vector<AuxCandidate> enumerate_candidates(const ConstructionPlan& plan, const Diagram& d,
                                               const graph::DeductionGraph& g,
                                               const HeuristicConfig& cfg) {
    Enumerator e(plan, d, g, cfg);
    return e.run();
}

} // namespace hageo::heuristic
