#include "hageo/ar/linear.hpp"

#include <cmath>

namespace hageo::ar {

using graph::Args;
using graph::DeductionGraph;
using graph::FactId;
using graph::kNoFact;
using graph::kNoObj;
using graph::ObjId;
using graph::Pred;

void vec_add(Vec& v, uint32_t col, const Rat& c) {
    if (c == 0) return;
    auto it = std::lower_bound(v.begin(), v.end(), col,
                               [](const auto& p, uint32_t c2) { return p.first < c2; });
    if (it != v.end() && it->first == col) {
        it->second += c;
        if (it->second == 0) v.erase(it);
    } else {
        v.insert(it, {col, c});
    }
}

void vec_axpy(Vec& v, const Rat& k, const Vec& w) {
    if (k == 0) return;
    for (const auto& [c, x] : w) vec_add(v, c, k * x);
}

const Rat* vec_get(const Vec& v, uint32_t col) {
    auto it = std::lower_bound(v.begin(), v.end(), col,
                               [](const auto& p, uint32_t c2) { return p.first < c2; });
    return (it != v.end() && it->first == col) ? &it->second : nullptr;
}

namespace {

struct Encoder {
    DeductionGraph& g;
    LinearSystem sys;
    const numeric::Diagram* diag;

    double line_dir(ObjId l) const {
        return numeric::line_angle(g.coords_of(l).line);
    }

    uint32_t avar(ObjId line) { return sys.var({g.find(line), kNoObj}); }
    uint32_t svar(ObjId p, ObjId q) {
        p = g.find(p); q = g.find(q);
        return sys.var({std::min(p, q), std::max(p, q)});
    }

    // angle row: sum of +-dir terms with the pi-multiple pinned numerically
    void angle_row(std::vector<std::pair<ObjId, int>> terms, Rat extra_half_pi,
                   std::vector<FactId> srcs) {
        Vec v;
        double resid = 0;
        for (auto& [l, sgn] : terms) {
            vec_add(v, avar(l), Rat(sgn));
            if (diag) resid += sgn * line_dir(l);
        }
        Rat cpi = -extra_half_pi;   // dir-combination = extra + k*pi
        if (diag) {
            double k = (resid - double(extra_half_pi) * M_PI) / M_PI;
            cpi -= Rat(llround(k));
        }
        vec_add(v, kConstCol, cpi);
        if (v.empty()) return;
        sys.rows.push_back({std::move(v), std::move(srcs)});
    }

    void ratio_row(std::vector<std::pair<std::pair<ObjId, ObjId>, int>> terms, Rat log2_coeff,
                   std::vector<FactId> srcs) {
        Vec v;
        for (auto& [seg, sgn] : terms) vec_add(v, svar(seg.first, seg.second), Rat(sgn));
        vec_add(v, kConstCol, log2_coeff);
        if (v.empty()) return;
        sys.rows.push_back({std::move(v), std::move(srcs)});
    }

    void length_row(std::vector<std::pair<std::pair<ObjId, ObjId>, Rat>> terms,
                    std::vector<FactId> srcs) {
        Vec v;
        for (auto& [seg, c] : terms) vec_add(v, svar(seg.first, seg.second), c);
        if (v.empty()) return;
        sys.rows.push_back({std::move(v), std::move(srcs)});
    }

    void encode_angle() {
        for (FactId f : g.facts_of(Pred::EqAngle)) {
            const auto& a = g.fact(f).args.a;
            angle_row({{a[0], 1}, {a[1], -1}, {a[2], -1}, {a[3], 1}}, 0, {f});
        }
        for (FactId f : g.facts_of(Pred::Para)) {
            const auto& a = g.fact(f).args.a;
            angle_row({{a[0], 1}, {a[1], -1}}, 0, {f});
        }
        for (FactId f : g.facts_of(Pred::Perp)) {
            const auto& a = g.fact(f).args.a;
            angle_row({{a[0], 1}, {a[1], -1}}, Rat(1, 2), {f});
        }
        auto simtri = [&](Pred p, int sgn) {
            for (FactId f : g.facts_of(p)) {
                const auto& a = g.fact(f).args.a;
                ObjId AB = g.intern_line(a[0], a[1]), AC = g.intern_line(a[0], a[2]),
                      BC = g.intern_line(a[1], a[2]), DE = g.intern_line(a[3], a[4]),
                      DF = g.intern_line(a[3], a[5]), EF = g.intern_line(a[4], a[5]);
                // direct: dir(DE)-dir(AB) = dir(DF)-dir(AC) = dir(EF)-dir(BC)
                // reverse: dir(DE)+dir(AB) = dir(DF)+dir(AC) = dir(EF)+dir(BC)
                angle_row({{DE, 1}, {AB, -sgn}, {DF, -1}, {AC, sgn}}, 0, {f});
                angle_row({{DF, 1}, {AC, -sgn}, {EF, -1}, {BC, sgn}}, 0, {f});
            }
        };
        simtri(Pred::SimtriP, 1);
        simtri(Pred::SimtriN, -1);
        central_angle_rows();
    }

    // points equidistant from a common point O lie on a circle around it; the
    // inscribed angle at P doubles into the central angle at O:
    //   2*dir(PA) - 2*dir(PB) - dir(OA) + dir(OB) = 0 (mod pi)
    void central_angle_rows() {
        struct Class {
            std::map<ObjId, std::vector<FactId>> pts;  // member -> facts tying it in
            ObjId root;
        };
        std::map<ObjId, std::vector<Class>> per_center;
        for (FactId f : g.facts_of(Pred::Cong)) {
            const auto& a = g.fact(f).args.a;
            // orient as O,X,O,Y
            ObjId O = kNoObj, X = kNoObj, Y = kNoObj;
            if (a[0] == a[2]) O = a[0], X = a[1], Y = a[3];
            else if (a[0] == a[3]) O = a[0], X = a[1], Y = a[2];
            else if (a[1] == a[2]) O = a[1], X = a[0], Y = a[3];
            else if (a[1] == a[3]) O = a[1], X = a[0], Y = a[2];
            if (O == kNoObj || X == Y) continue;
            auto& classes = per_center[O];
            int ci = -1, cj = -1;
            for (size_t k = 0; k < classes.size(); ++k) {
                if (classes[k].pts.count(X)) ci = int(k);
                if (classes[k].pts.count(Y)) cj = int(k);
            }
            if (ci < 0 && cj < 0) {
                Class c;
                c.pts[X] = {f};
                c.pts[Y] = {f};
                classes.push_back(std::move(c));
            } else if (ci >= 0 && cj < 0) {
                auto chain = classes[ci].pts[X];
                chain.push_back(f);
                classes[ci].pts[Y] = chain;
            } else if (ci < 0 && cj >= 0) {
                auto chain = classes[cj].pts[Y];
                chain.push_back(f);
                classes[cj].pts[X] = chain;
            } else if (ci != cj) {
                // union two classes: re-anchor the smaller through f
                if (classes[ci].pts.size() < classes[cj].pts.size()) std::swap(ci, cj);
                auto bridge = classes[ci].pts[X];
                bridge.push_back(f);
                auto tail = classes[cj].pts[Y];
                for (auto& [p, facts] : classes[cj].pts) {
                    std::vector<FactId> via = bridge;
                    // connect p to Y inside cj, then Y to X via f, then X to root of ci
                    via.insert(via.end(), tail.begin(), tail.end());
                    via.insert(via.end(), facts.begin(), facts.end());
                    classes[ci].pts.emplace(p, via);
                }
                classes.erase(classes.begin() + cj);
            }
        }
        for (auto& [O, classes] : per_center) {
            for (auto& cl : classes) {
                if (cl.pts.size() < 3) continue;
                std::vector<ObjId> pts;
                for (auto& [p, _] : cl.pts) pts.push_back(p);
                for (size_t i = 0; i < pts.size(); ++i)
                    for (size_t j = 0; j < pts.size(); ++j) {
                        if (i == j) continue;
                        for (size_t k = j + 1; k < pts.size(); ++k) {
                            if (k == i) continue;
                            ObjId P = pts[i], A = pts[j], B = pts[k];
                            std::vector<FactId> srcs;
                            for (ObjId q : {P, A, B})
                                for (FactId s : cl.pts[q]) srcs.push_back(s);
                            std::sort(srcs.begin(), srcs.end());
                            srcs.erase(std::unique(srcs.begin(), srcs.end()), srcs.end());
                            Vec v;
                            vec_add(v, avar(g.intern_line(P, A)), Rat(2));
                            vec_add(v, avar(g.intern_line(P, B)), Rat(-2));
                            vec_add(v, avar(g.intern_line(O, A)), Rat(-1));
                            vec_add(v, avar(g.intern_line(O, B)), Rat(1));
                            Rat cpi = 0;
                            if (diag) {
                                double r = 2 * line_dir(g.intern_line(P, A)) -
                                           2 * line_dir(g.intern_line(P, B)) -
                                           line_dir(g.intern_line(O, A)) +
                                           line_dir(g.intern_line(O, B));
                                cpi = -Rat(llround(r / M_PI));
                            }
                            vec_add(v, kConstCol, cpi);
                            if (!v.empty()) sys.rows.push_back({std::move(v), std::move(srcs)});
                        }
                    }
            }
        }
    }

    void encode_ratio() {
        for (FactId f : g.facts_of(Pred::Cong)) {
            const auto& a = g.fact(f).args.a;
            ratio_row({{{a[0], a[1]}, 1}, {{a[2], a[3]}, -1}}, 0, {f});
        }
        for (FactId f : g.facts_of(Pred::EqRatio)) {
            const auto& a = g.fact(f).args.a;
            ratio_row({{{a[0], a[1]}, 1}, {{a[2], a[3]}, -1}, {{a[4], a[5]}, -1}, {{a[6], a[7]}, 1}},
                      0, {f});
        }
        for (FactId f : g.facts_of(Pred::Midp)) {
            const auto& a = g.fact(f).args.a;
            ratio_row({{{a[1], a[2]}, 1}, {{a[0], a[1]}, -1}}, Rat(-1), {f});
            ratio_row({{{a[0], a[1]}, 1}, {{a[0], a[2]}, -1}}, 0, {f});
        }
        auto simtri = [&](Pred p) {
            for (FactId f : g.facts_of(p)) {
                const auto& a = g.fact(f).args.a;
                ratio_row({{{a[3], a[4]}, 1}, {{a[0], a[1]}, -1}, {{a[3], a[5]}, -1}, {{a[0], a[2]}, 1}},
                          0, {f});
                ratio_row({{{a[3], a[5]}, 1}, {{a[0], a[2]}, -1}, {{a[4], a[5]}, -1}, {{a[1], a[2]}, 1}},
                          0, {f});
            }
        };
        simtri(Pred::SimtriP);
        simtri(Pred::SimtriN);
        for (FactId f : g.facts_of(Pred::Contri)) {
            const auto& a = g.fact(f).args.a;
            ratio_row({{{a[0], a[1]}, 1}, {{a[3], a[4]}, -1}}, 0, {f});
            ratio_row({{{a[0], a[2]}, 1}, {{a[3], a[5]}, -1}}, 0, {f});
            ratio_row({{{a[1], a[2]}, 1}, {{a[4], a[5]}, -1}}, 0, {f});
        }
    }

    void encode_length() {
        for (FactId f : g.facts_of(Pred::Cong)) {
            const auto& a = g.fact(f).args.a;
            length_row({{{a[0], a[1]}, Rat(1)}, {{a[2], a[3]}, Rat(-1)}}, {f});
        }
        for (FactId f : g.facts_of(Pred::Midp)) {
            const auto& a = g.fact(f).args.a;
            length_row({{{a[1], a[2]}, Rat(1)}, {{a[0], a[1]}, Rat(-2)}}, {f});
            length_row({{{a[0], a[1]}, Rat(1)}, {{a[0], a[2]}, Rat(-1)}}, {f});
        }
        for (FactId f : g.facts_of(Pred::Contri)) {
            const auto& a = g.fact(f).args.a;
            length_row({{{a[0], a[1]}, Rat(1)}, {{a[3], a[4]}, Rat(-1)}}, {f});
            length_row({{{a[0], a[2]}, Rat(1)}, {{a[3], a[5]}, Rat(-1)}}, {f});
            length_row({{{a[1], a[2]}, Rat(1)}, {{a[4], a[5]}, Rat(-1)}}, {f});
        }
    }
};

} // namespace

LinearSystem encode_facts(DeductionGraph& g, ArKind kind) {
    Encoder e{g, {}, g.guard_diagram()};
    e.sys.kind = kind;
    switch (kind) {
        case ArKind::Angle: e.encode_angle(); break;
        case ArKind::Ratio: e.encode_ratio(); break;
        case ArKind::Length: e.encode_length(); break;
    }
    return std::move(e.sys);
}

} // namespace hageo::ar
