#include "hageo/ar/derive.hpp"

#include <map>
#include <set>

namespace hageo::ar {

using graph::Args;
using graph::FactId;
using graph::kNoObj;
using graph::Pred;

Rat frac_part(const Rat& r) {
    using boost::multiprecision::cpp_int;
    cpp_int num = numerator(r), den = denominator(r);
    cpp_int q = num / den;
    if (num < 0 && q * den != num) q -= 1;   // floor
    return r - Rat(q);
}

namespace {

struct VecLess {
    bool operator()(const Vec& a, const Vec& b) const {
        if (a.size() != b.size()) return a.size() < b.size();
        for (size_t i = 0; i < a.size(); ++i) {
            if (a[i].first != b[i].first) return a[i].first < b[i].first;
            if (a[i].second != b[i].second) return a[i].second < b[i].second;
        }
        return false;
    }
};

struct Deriver {
    const ReducedBasis& b;
    const LinearSystem& sys;
    const graph::DeductionGraph& g;
    std::vector<Finding> out;
    std::set<std::pair<int, Args>> emitted;
    std::vector<Vec> expr;   // per variable column

    bool is_angle() const { return sys.kind == ArKind::Angle; }

    Vec unit(uint32_t col) const { return Vec{{col, Rat(1)}}; }

    // reduce the constant coefficient mod 1 for angle keys
    Vec key_of(Vec v) const {
        if (is_angle() && !v.empty() && v.back().first == kConstCol) {
            Rat f = frac_part(v.back().second);
            if (f == 0) v.pop_back();
            else v.back().second = f;
        }
        return v;
    }

    std::vector<FactId> cites_of(const Vec& v) const {
        auto e = b.express(v);
        std::vector<FactId> cites;
        for (const auto& [ri, c] : e.lambda)
            for (FactId f : sys.rows[ri].srcs) cites.push_back(f);
        std::sort(cites.begin(), cites.end());
        cites.erase(std::unique(cites.begin(), cites.end()), cites.end());
        return cites;
    }

    void emit(Pred p, Args args, const Vec& combo) {
        args = graph::canonical_args(p, args);
        if (graph::trivial_fact(p, args)) return;
        if (!emitted.insert({int(p), args}).second) return;
        if (g.has_fact(p, args)) return;
        out.push_back({p, args, cites_of(combo)});
    }

    void angle_pair(uint32_t i, uint32_t j, uint32_t k, uint32_t l) {
        // x_i - x_k = x_l - x_j  (mod pi)
        Vec combo;
        vec_add(combo, i, Rat(1));
        vec_add(combo, j, Rat(1));
        vec_add(combo, k, Rat(-1));
        vec_add(combo, l, Rat(-1));
        emit(Pred::EqAngle,
             graph::make_args({sys.vars[i].a, sys.vars[k].a, sys.vars[l].a, sys.vars[j].a}), combo);
    }

    void ratio_pair(uint32_t i, uint32_t j, uint32_t k, uint32_t l) {
        Vec combo;
        vec_add(combo, i, Rat(1));
        vec_add(combo, j, Rat(1));
        vec_add(combo, k, Rat(-1));
        vec_add(combo, l, Rat(-1));
        emit(Pred::EqRatio,
             graph::make_args({sys.vars[i].a, sys.vars[i].b, sys.vars[k].a, sys.vars[k].b,
                               sys.vars[l].a, sys.vars[l].b, sys.vars[j].a, sys.vars[j].b}),
             combo);
    }

    void run() {
        uint32_t n = uint32_t(sys.vars.size());
        expr.resize(n);
        for (uint32_t i = 0; i < n; ++i) expr[i] = b.express(unit(i)).residual;

        // constant-valued differences
        for (uint32_t i = 0; i < n; ++i)
            for (uint32_t j = i + 1; j < n; ++j) {
                Vec d = expr[i];
                vec_axpy(d, Rat(-1), expr[j]);
                bool const_only = true;
                Rat c = 0;
                for (const auto& [col, x] : d) {
                    if (col == kConstCol) c = x;
                    else const_only = false;
                }
                if (!const_only) continue;
                Vec combo{{i, Rat(1)}, {std::min(j, kConstCol), Rat(0)}};  // placeholder, rebuilt below
                combo.clear();
                vec_add(combo, i, Rat(1));
                vec_add(combo, j, Rat(-1));
                if (is_angle()) {
                    Rat f = frac_part(c);
                    if (f == 0)
                        emit(Pred::Para, graph::make_args({sys.vars[i].a, sys.vars[j].a}), combo);
                    else if (f == Rat(1, 2))
                        emit(Pred::Perp, graph::make_args({sys.vars[i].a, sys.vars[j].a}), combo);
                } else if (c == 0) {
                    emit(Pred::Cong,
                         graph::make_args({sys.vars[i].a, sys.vars[i].b, sys.vars[j].a, sys.vars[j].b}),
                         combo);
                }
            }

        if (sys.kind == ArKind::Length) return;  // sums have no predicate form

        // symmetric sum buckets: x_i + x_j, i <= j
        std::map<Vec, std::vector<std::pair<uint32_t, uint32_t>>, VecLess> buckets;
        for (uint32_t i = 0; i < n; ++i)
            for (uint32_t j = i; j < n; ++j) {
                Vec s = expr[i];
                vec_axpy(s, Rat(1), expr[j]);
                buckets[key_of(std::move(s))].push_back({i, j});
            }
        for (const auto& [key, pairs] : buckets) {
            for (size_t x = 0; x < pairs.size(); ++x)
                for (size_t y = x + 1; y < pairs.size(); ++y) {
                    auto [i, j] = pairs[x];
                    auto [k, l] = pairs[y];
                    // x_i + x_j = x_k + x_l: both difference readings
                    if (is_angle()) {
                        angle_pair(i, j, k, l);
                        angle_pair(i, j, l, k);
                    } else {
                        ratio_pair(i, j, k, l);
                        ratio_pair(i, j, l, k);
                    }
                }
        }
    }
};

} // namespace

std::vector<Finding> derive_equalities(const ReducedBasis& basis, const LinearSystem& sys,
                                       const graph::DeductionGraph& g) {
    Deriver d{basis, sys, g, {}, {}, {}};
    d.run();
    return std::move(d.out);
}

} // namespace hageo::ar
