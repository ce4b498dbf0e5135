#include <algorithm>
#include <cmath>

#include "hageo/numeric/diagram.hpp"

namespace hageo::numeric {

using glang::PlanArg;
using glang::PlanFact;

LineN arg_line(const Diagram& d, const PlanArg& a) {
    if (a.is_line_of()) return LineN::through(d.point(a.obj), d.point(a.p2));
    const ObjCoord& oc = d.at(a.obj);
    if (oc.kind != glang::ObjKind::Line) throw UnknownObject("expected a line argument");
    return oc.line;
}

namespace {

double r_coll(Vec2 a, Vec2 b, Vec2 c, double s) {
    return std::abs((b - a).cross(c - a)) / (s * s);
}
double r_cong(Vec2 a, Vec2 b, Vec2 c, Vec2 d, double s) {
    return std::abs(dist(a, b) - dist(c, d)) / s;
}
double r_cyclic(Vec2 a, Vec2 b, Vec2 c, Vec2 d, double s) {
    auto o = circumcenter(a, b, c);
    if (!o) return 1.0;
    return std::abs(dist(*o, d) - dist(*o, a)) / s;
}

} // namespace

double residual_resolved(const std::string& p, const std::vector<ObjCoord>& a, double s) {
    auto pt = [&](size_t i) -> Vec2 {
        if (a[i].kind != glang::ObjKind::Point) throw UnknownObject(p + ": expected a point");
        return a[i].pt;
    };
    auto ln = [&](size_t i) -> const LineN& {
        if (a[i].kind != glang::ObjKind::Line) throw UnknownObject(p + ": expected a line");
        return a[i].line;
    };
    if (p == "coll") return r_coll(pt(0), pt(1), pt(2), s);
    if (p == "cyclic") return r_cyclic(pt(0), pt(1), pt(2), pt(3), s);
    if (p == "cong") return r_cong(pt(0), pt(1), pt(2), pt(3), s);
    if (p == "para") return std::abs(std::sin(line_angle(ln(0)) - line_angle(ln(1))));
    if (p == "perp") return std::abs(std::cos(line_angle(ln(0)) - line_angle(ln(1))));
    if (p == "eqangle") {
        double t = line_angle(ln(0)) - line_angle(ln(1)) - line_angle(ln(2)) + line_angle(ln(3));
        return std::abs(std::sin(t));
    }
    if (p == "midp") return dist(pt(0), (pt(1) + pt(2)) / 2) / s;
    if (p == "eqratio") {
        double ab = dist(pt(0), pt(1)), cd = dist(pt(2), pt(3));
        double ef = dist(pt(4), pt(5)), gh = dist(pt(6), pt(7));
        double den = std::max({cd * ef, ab * gh, 1e-300});
        return std::abs(ab * gh - cd * ef) / den;
    }
    if (p == "center") {
        if (a[0].kind != glang::ObjKind::Circle) throw UnknownObject("center: expected a circle");
        return dist(a[0].circle.c, pt(1)) / s;
    }
    if (p == "simtriP" || p == "simtriN") {
        Vec2 A = pt(0), B = pt(1), C = pt(2), D = pt(3), E = pt(4), F = pt(5);
        Vec2 u = B - A, v = C - A, x = E - D, y = F - D;
        if (p == "simtriN") { x.y = -x.y; y.y = -y.y; }
        // (B-A)*(F-D) == (C-A)*(E-D) as complex numbers
        double re = u.x * y.x - u.y * y.y - (v.x * x.x - v.y * x.y);
        double im = u.x * y.y + u.y * y.x - (v.x * x.y + v.y * x.x);
        double den = std::max(v.norm() * y.norm(), 1e-300);
        return std::hypot(re, im) / den;
    }
    if (p == "contri") {
        double r1 = r_cong(pt(0), pt(1), pt(3), pt(4), s);
        double r2 = r_cong(pt(0), pt(2), pt(3), pt(5), s);
        double r3 = r_cong(pt(1), pt(2), pt(4), pt(5), s);
        return std::max({r1, r2, r3});
    }
    if (p == "same") return dist(pt(0), pt(1)) / s;
    if (p == "on_line") return std::abs(ln(1).signed_dist(pt(0))) / s;
    if (p == "on_circle") {
        if (a[1].kind != glang::ObjKind::Circle) throw UnknownObject("on_circle: expected a circle");
        return std::abs(dist(a[1].circle.c, pt(0)) - a[1].circle.r) / s;
    }
    throw UnknownObject("unknown predicate: " + p);
}

double statement_residual(const Diagram& d, const PlanFact& f) {
    std::vector<ObjCoord> resolved;
    resolved.reserve(f.args.size());
    for (const auto& a : f.args) {
        if (a.is_line_of()) {
            ObjCoord oc;
            oc.kind = glang::ObjKind::Line;
            oc.line = arg_line(d, a);
            resolved.push_back(oc);
        } else {
            resolved.push_back(d.at(a.obj));
        }
    }
    return residual_resolved(f.pred, resolved, d.scale);
}

bool check_statement(const Diagram& d, const PlanFact& f, const NumericConfig& cfg) {
    return statement_residual(d, f) < cfg.tau_rel;
}

bool confirm_across_seeds(const glang::ConstructionPlan& plan, const PlanFact& f,
                          const NumericConfig& cfg, uint64_t base_seed) {
    Diagram ref = sample_diagram(plan, base_seed, cfg);
    if (!check_statement(ref, f, cfg)) return false;
    for (int i = 1; i < cfg.confirm_seeds; ++i) {
        Diagram di = sample_diagram(plan, base_seed + 0x5851f42d4c957f2dULL * uint64_t(i), cfg, &ref);
        if (!check_statement(di, f, cfg)) return false;
    }
    return true;
}

} // namespace hageo::numeric
