#include <algorithm>
#include <cmath>
#include <sstream>

#include "hageo/numeric/diagram.hpp"
#include "hageo/util/rng.hpp"

namespace hageo::numeric {

using glang::ConstructionPlan;
using glang::PlanSide;
using glang::PlanStep;
using Op = PlanStep::Op;

namespace {

struct DrawFailure {
    bool no_real_solution = false;
    std::string what;
};

struct Sampler {
    const ConstructionPlan& plan;
    const NumericConfig& cfg;
    const Diagram* follow;
    Rng rng;
    Diagram d;
    DrawFailure fail;

    Sampler(const ConstructionPlan& p, const NumericConfig& c, const Diagram* f, uint64_t draw_seed)
        : plan(p), cfg(c), follow(f), rng(draw_seed) {}

    Vec2 free_point() {
        // unit disc, rejection
        for (;;) {
            double x = rng.uniform(-1, 1), y = rng.uniform(-1, 1);
            if (x * x + y * y <= 1) return {x, y};
        }
    }

    double running_scale() const {
        double lo_x = 1e18, hi_x = -1e18, lo_y = 1e18, hi_y = -1e18;
        bool any = false;
        for (const auto& oc : d.coords)
            if (oc.kind == glang::ObjKind::Point) {
                any = true;
                lo_x = std::min(lo_x, oc.pt.x); hi_x = std::max(hi_x, oc.pt.x);
                lo_y = std::min(lo_y, oc.pt.y); hi_y = std::max(hi_y, oc.pt.y);
            }
        if (!any) return 1.0;
        return std::max({hi_x - lo_x, hi_y - lo_y, 1e-6});
    }

    bool too_close(Vec2 a, Vec2 b, double scale) const {
        return dist(a, b) < cfg.tau_margin * scale;
    }

    // choose among nsol candidate solutions for step `sid`
    bool pick_solution(uint32_t sid, const PlanStep& st, Vec2 sols[2], int nsol, Vec2& out) {
        double scale = running_scale();
        if (nsol == 0) {
            fail = {true, st.name + ": curves do not meet"};
            return false;
        }
        if (nsol == 1) {
            if (st.branch == 1) { fail = {true, st.name + ": tangential, single intersection"}; return false; }
            d.branches[sid] = 0;
            out = sols[0];
            return true;
        }
        if (st.branch >= 0) {
            // pairwise binding: branch 0 = lexicographically smaller solution
            int lex = (sols[0].x < sols[1].x || (sols[0].x == sols[1].x && sols[0].y <= sols[1].y)) ? 0 : 1;
            int idx = st.branch == 0 ? lex : 1 - lex;
            d.branches[sid] = int8_t(idx);
            out = sols[idx];
            return true;
        }
        if (st.exclude_known) {
            bool excl[2] = {false, false};
            for (uint32_t j = 0; j < sid; ++j)
                if (d.coords[j].kind == glang::ObjKind::Point)
                    for (int s = 0; s < 2; ++s)
                        if (too_close(sols[s], d.coords[j].pt, scale)) excl[s] = true;
            if (excl[0] != excl[1]) {
                int idx = excl[0] ? 1 : 0;
                d.branches[sid] = int8_t(idx);
                out = sols[idx];
                return true;
            }
            if (excl[0] && excl[1]) {
                fail = {false, st.name + ": both intersections coincide with defined points"};
                return false;
            }
        }
        int idx;
        if (follow && follow->branches.size() > sid && follow->branches[sid] >= 0) {
            idx = follow->branches[sid];
        } else {
            idx = (sols[0].x < sols[1].x || (sols[0].x == sols[1].x && sols[0].y <= sols[1].y)) ? 0 : 1;
        }
        d.branches[sid] = int8_t(idx);
        out = sols[idx];
        return true;
    }

    double locus_angle(const PlanStep& st) const {
        // dir(apex,X) = dir(apex,ray) + dir(Q,P) - dir(Q,R)
        Vec2 apex = d.coords[st.refs[0]].pt, ray = d.coords[st.refs[1]].pt;
        Vec2 P = d.coords[st.refs[2]].pt, Q = d.coords[st.refs[3]].pt, R = d.coords[st.refs[4]].pt;
        return seg_angle(apex, ray) + seg_angle(Q, P) - seg_angle(Q, R);
    }

    bool step(uint32_t sid) {
        const PlanStep& st = plan.steps[sid];
        ObjCoord oc;
        oc.kind = st.kind;
        double scale = running_scale();
        auto pt = [&](size_t i) { return d.coords[st.refs[i]].pt; };
        auto degen = [&](const std::string& m) { fail = {false, st.name + ": " + m}; return false; };

        switch (st.op) {
            case Op::FreePoint:
                oc.pt = free_point();
                break;
            case Op::OnLine: {
                const LineN& l = d.coords[st.refs[0]].line;
                oc.pt = l.base() + l.dir() * (rng.uniform(-1.3, 1.3) * std::max(scale, 0.5));
                break;
            }
            case Op::OnCircle: {
                const CircleN& w = d.coords[st.refs[0]].circle;
                oc.pt = w.c + rotate({w.r, 0}, rng.uniform(0, 2 * M_PI));
                break;
            }
            case Op::Midpoint:
                oc.pt = (pt(0) + pt(1)) / 2;
                break;
            case Op::FootPPP: {
                if (too_close(pt(1), pt(2), scale)) return degen("foot line degenerate");
                LineN l = LineN::through(pt(1), pt(2));
                oc.pt = l.foot(pt(0));
                break;
            }
            case Op::FootPL:
                oc.pt = d.coords[st.refs[1]].line.foot(pt(0));
                break;
            case Op::Reflect:
                oc.pt = pt(1) * 2 - pt(0);
                break;
            case Op::Circumcenter: {
                auto o = circumcenter(pt(0), pt(1), pt(2));
                if (!o) return degen("collinear circumcenter arguments");
                oc.pt = *o;
                break;
            }
            case Op::Incenter:
                oc.pt = incenter(pt(0), pt(1), pt(2));
                break;
            case Op::EquilateralApex: {
                // clockwise equilateral: apex = rotation of second point about first by -60 deg
                if (too_close(pt(0), pt(1), scale)) return degen("null segment");
                oc.pt = pt(0) + rotate(pt(1) - pt(0), -M_PI / 3);
                break;
            }
            case Op::LineThrough:
                if (too_close(pt(0), pt(1), scale)) return degen("coincident line points");
                oc.line = LineN::through(pt(0), pt(1));
                break;
            case Op::LineParallel:
                oc.line = LineN::point_dir(pt(0), d.coords[st.refs[1]].line.dir());
                break;
            case Op::LinePerp:
                oc.line = LineN::point_dir(pt(0), d.coords[st.refs[1]].line.n);
                break;
            case Op::AngleLocus: {
                double a = locus_angle(st);
                oc.line = LineN::point_dir(pt(0), {std::cos(a), std::sin(a)});
                break;
            }
            case Op::CircleCenterThrough: {
                double r = dist(pt(0), pt(1));
                if (r < cfg.tau_margin * scale) return degen("zero radius");
                oc.circle = {pt(0), r};
                break;
            }
            case Op::Circumcircle: {
                Vec2 o = d.coords[st.refs[3]].pt;
                oc.circle = {o, dist(o, pt(0))};
                break;
            }
            case Op::InterLL: {
                auto x = inter_ll(d.coords[st.refs[0]].line, d.coords[st.refs[1]].line);
                if (!x) { fail = {true, st.name + ": parallel lines"}; return false; }
                oc.pt = *x;
                break;
            }
            case Op::InterLC: {
                Vec2 sols[2];
                int n = inter_lc(d.coords[st.refs[0]].line, d.coords[st.refs[1]].circle, sols);
                if (!pick_solution(sid, st, sols, n, oc.pt)) return false;
                break;
            }
            case Op::InterCC: {
                Vec2 sols[2];
                int n = inter_cc(d.coords[st.refs[0]].circle, d.coords[st.refs[1]].circle, sols);
                if (!pick_solution(sid, st, sols, n, oc.pt)) return false;
                break;
            }
        }
        d.coords[sid] = oc;
        return true;
    }

    bool sides_ok() {
        double scale = running_scale();
        // declared side conditions
        for (const auto& s : plan.sides) {
            if (s.kind == PlanSide::Kind::NonCollinear) {
                Vec2 a = d.coords[s.objs[0]].pt, b = d.coords[s.objs[1]].pt, c = d.coords[s.objs[2]].pt;
                if (std::abs((b - a).cross(c - a)) < cfg.tau_margin * scale * scale) {
                    fail = {false, "side condition: collinear"};
                    return false;
                }
            } else {
                Vec2 a = d.coords[s.objs[0]].pt, b = d.coords[s.objs[1]].pt;
                if (too_close(a, b, scale)) {
                    fail = {false, "side condition: coincident"};
                    return false;
                }
            }
        }
        // base-problem points pairwise distinct; auxiliary points may
        // deliberately coincide with existing ones
        for (uint32_t i = 0; i < d.coords.size(); ++i) {
            if (d.coords[i].kind != glang::ObjKind::Point) continue;
            if (plan.steps[i].stmt >= plan.base_statements) continue;
            for (uint32_t j = i + 1; j < d.coords.size(); ++j) {
                if (d.coords[j].kind != glang::ObjKind::Point) continue;
                if (plan.steps[j].stmt >= plan.base_statements) continue;
                if (too_close(d.coords[i].pt, d.coords[j].pt, scale)) {
                    fail = {false, plan.steps[i].name + " and " + plan.steps[j].name + " coincide"};
                    return false;
                }
            }
        }
        return true;
    }

    bool run() {
        d.coords.assign(plan.steps.size(), {});
        d.branches.assign(plan.steps.size(), -1);
        for (uint32_t i = 0; i < plan.steps.size(); ++i)
            if (!step(i)) return false;
        if (!sides_ok()) return false;
        d.scale = running_scale();
        return true;
    }
};

uint64_t mix(uint64_t seed, uint64_t draw) {
    uint64_t z = seed * 0x9e3779b97f4a7c15ULL + draw + 0x853c49e6748fea9bULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    return z ^ (z >> 27);
}

} // namespace

Diagram sample_diagram(const ConstructionPlan& plan, uint64_t seed, const NumericConfig& cfg,
                       const Diagram* follow) {
    int real_failures = 0;
    std::string last;
    for (int draw = 0; draw < cfg.max_resample; ++draw) {
        Sampler s(plan, cfg, follow, mix(seed, uint64_t(draw)));
        if (s.run()) {
            s.d.seed = seed;
            return std::move(s.d);
        }
        if (!s.fail.no_real_solution) ++real_failures;
        last = s.fail.what;
    }
    if (real_failures == 0)
        throw UnsatisfiableConstruction("no real solution in any draw: " + last);
    throw DegenerateDiagram("no non-degenerate diagram after " +
                            std::to_string(cfg.max_resample) + " draws: " + last);
}

std::string dump_diagram(const ConstructionPlan& plan, const Diagram& d) {
    std::ostringstream os;
    for (uint32_t i = 0; i < plan.steps.size(); ++i) {
        const auto& st = plan.steps[i];
        const auto& oc = d.coords[i];
        os << st.name << "\t";
        switch (oc.kind) {
            case glang::ObjKind::Point:
                os << "point\t" << oc.pt.x << "\t" << oc.pt.y;
                break;
            case glang::ObjKind::Line:
                os << "line\t" << oc.line.n.x << "\t" << oc.line.n.y << "\t" << oc.line.c;
                break;
            case glang::ObjKind::Circle:
                os << "circle\t" << oc.circle.c.x << "\t" << oc.circle.c.y << "\t" << oc.circle.r;
                break;
        }
        os << "\n";
    }
    return os.str();
}

} // namespace hageo::numeric
