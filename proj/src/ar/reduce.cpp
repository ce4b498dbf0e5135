#include "hageo/ar/reduce.hpp"

namespace hageo::ar {

ReducedBasis reduce(const LinearSystem& sys) {
    ReducedBasis b;
    b.nvars = uint32_t(sys.vars.size());
    for (uint32_t r = 0; r < sys.rows.size(); ++r) {
        Vec v = sys.rows[r].coeffs;
        std::map<uint32_t, Rat> lam{{r, Rat(1)}};
        // eliminate against existing leads
        for (bool changed = true; changed;) {
            changed = false;
            for (const auto& [c, x] : v) {
                if (c == kConstCol) continue;
                auto it = b.lead_row.find(c);
                if (it == b.lead_row.end()) continue;
                const auto& rr = b.rows[it->second];
                Rat k = -x;
                vec_axpy(v, k, rr.coeffs);
                for (const auto& [ri, lc] : rr.lambda) {
                    lam[ri] += k * lc;
                    if (lam[ri] == 0) lam.erase(ri);
                }
                changed = true;
                break;
            }
        }
        if (v.empty()) continue;
        if (v.size() == 1 && v[0].first == kConstCol)
            throw InconsistentSystem("row reduces to a nonzero constant");
        // lead = smallest variable column
        uint32_t lead = v[0].first;
        const Rat* lc = vec_get(v, lead);
        Rat inv = 1 / *lc;
        for (auto& [c, x] : v) x *= inv;
        for (auto& [ri, x] : lam) x *= inv;
        // back-substitute into existing rows
        for (auto& rr : b.rows) {
            const Rat* coef = vec_get(rr.coeffs, lead);
            if (!coef) continue;
            Rat k = -*coef;
            vec_axpy(rr.coeffs, k, v);
            for (const auto& [ri, x] : lam) {
                rr.lambda[ri] += k * x;
                if (rr.lambda[ri] == 0) rr.lambda.erase(ri);
            }
        }
        ReducedBasis::RRow out;
        out.coeffs = std::move(v);
        out.lead = lead;
        out.lambda = std::move(lam);
        b.lead_row[lead] = uint32_t(b.rows.size());
        b.rows.push_back(std::move(out));
    }
    b.rank = uint32_t(b.rows.size());
    return b;
}

ReducedBasis::Expr ReducedBasis::express(Vec v) const {
    Expr e;
    for (bool changed = true; changed;) {
        changed = false;
        for (const auto& [c, x] : v) {
            if (c == kConstCol) continue;
            auto it = lead_row.find(c);
            if (it == lead_row.end()) continue;
            const auto& rr = rows[it->second];
            Rat k = -x;
            vec_axpy(v, k, rr.coeffs);
            for (const auto& [ri, lc] : rr.lambda) {
                e.lambda[ri] += k * lc;
                if (e.lambda[ri] == 0) e.lambda.erase(ri);
            }
            changed = true;
            break;
        }
    }
    e.residual = std::move(v);
    return e;
}

std::vector<uint32_t> ReducedBasis::free_columns() const {
    std::vector<uint32_t> out;
    for (uint32_t c = 0; c < nvars; ++c)
        if (!lead_row.count(c)) out.push_back(c);
    return out;
}

} // namespace hageo::ar
