#pragma once
#include <cmath>
#include <optional>
#include <utility>

namespace hageo::numeric {

struct Vec2 {
    double x = 0, y = 0;
    Vec2 operator+(Vec2 o) const { return {x + o.x, y + o.y}; }
    Vec2 operator-(Vec2 o) const { return {x - o.x, y - o.y}; }
    Vec2 operator*(double k) const { return {x * k, y * k}; }
    Vec2 operator/(double k) const { return {x / k, y / k}; }
    double dot(Vec2 o) const { return x * o.x + y * o.y; }
    double cross(Vec2 o) const { return x * o.y - y * o.x; }
    double norm() const { return std::hypot(x, y); }
    Vec2 unit() const { double n = norm(); return {x / n, y / n}; }
    Vec2 perp() const { return {-y, x}; }
};

inline double dist(Vec2 a, Vec2 b) { return (a - b).norm(); }

// line in normal form n.x*x + n.y*y = c, |n| = 1
struct LineN {
    Vec2 n;
    double c = 0;
    Vec2 dir() const { return n.perp(); }
    double signed_dist(Vec2 p) const { return n.dot(p) - c; }
    Vec2 foot(Vec2 p) const { return p - n * signed_dist(p); }
    Vec2 base() const { return n * c; }

    static LineN through(Vec2 a, Vec2 b) {
        Vec2 d = (b - a).unit();
        Vec2 n = d.perp();
        return {n, n.dot(a)};
    }
    static LineN point_dir(Vec2 a, Vec2 d) {
        Vec2 n = d.unit().perp();
        return {n, n.dot(a)};
    }
};

struct CircleN {
    Vec2 c;
    double r = 0;
};

// direction angle of a line, in [0, pi)
inline double line_angle(const LineN& l) {
    Vec2 d = l.dir();
    double a = std::atan2(d.y, d.x);
    a = std::fmod(a, M_PI);
    if (a < 0) a += M_PI;
    return a;
}

inline double seg_angle(Vec2 a, Vec2 b) {
    double t = std::atan2(b.y - a.y, b.x - a.x);
    t = std::fmod(t, M_PI);
    if (t < 0) t += M_PI;
    return t;
}

// fold an angle difference into [-pi/2, pi/2)
inline double fold_pi(double a) {
    a = std::fmod(a, M_PI);
    if (a < -M_PI / 2) a += M_PI;
    if (a >= M_PI / 2) a -= M_PI;
    return a;
}

inline std::optional<Vec2> inter_ll(const LineN& a, const LineN& b) {
    double det = a.n.x * b.n.y - a.n.y * b.n.x;
    if (std::abs(det) < 1e-14) return std::nullopt;
    return Vec2{(a.c * b.n.y - b.c * a.n.y) / det, (a.n.x * b.c - b.n.x * a.c) / det};
}

// solutions ordered by parameter along l.dir()
inline int inter_lc(const LineN& l, const CircleN& w, Vec2 out[2]) {
    Vec2 f = l.foot(w.c);
    double d2 = w.r * w.r - (f - w.c).dot(f - w.c);
    if (d2 < 0) return 0;
    double h = std::sqrt(d2);
    Vec2 d = l.dir();
    if (h < 1e-15) { out[0] = f; return 1; }
    out[0] = f - d * h;
    out[1] = f + d * h;
    return 2;
}

inline int inter_cc(const CircleN& a, const CircleN& b, Vec2 out[2]) {
    double d = dist(a.c, b.c);
    if (d < 1e-15) return 0;
    // radical line: points with equal power
    double x = (d * d + a.r * a.r - b.r * b.r) / (2 * d);
    double h2 = a.r * a.r - x * x;
    if (h2 < 0) return 0;
    Vec2 u = (b.c - a.c) / d;
    Vec2 base = a.c + u * x;
    double h = std::sqrt(std::max(0.0, h2));
    if (h < 1e-15) { out[0] = base; return 1; }
    out[0] = base - u.perp() * h;
    out[1] = base + u.perp() * h;
    return 2;
}

inline std::optional<Vec2> circumcenter(Vec2 a, Vec2 b, Vec2 c) {
    double d = 2 * (a.x * (b.y - c.y) + b.x * (c.y - a.y) + c.x * (a.y - b.y));
    if (std::abs(d) < 1e-14) return std::nullopt;
    double a2 = a.dot(a), b2 = b.dot(b), c2 = c.dot(c);
    return Vec2{(a2 * (b.y - c.y) + b2 * (c.y - a.y) + c2 * (a.y - b.y)) / d,
                (a2 * (c.x - b.x) + b2 * (a.x - c.x) + c2 * (b.x - a.x)) / d};
}

inline Vec2 incenter(Vec2 a, Vec2 b, Vec2 c) {
    double la = dist(b, c), lb = dist(c, a), lc = dist(a, b);
    return (a * la + b * lb + c * lc) / (la + lb + lc);
}

inline Vec2 rotate(Vec2 v, double ang) {
    double s = std::sin(ang), co = std::cos(ang);
    return {v.x * co - v.y * s, v.x * s + v.y * co};
}

} // namespace hageo::numeric
