#include "hageo/ar/ddar.hpp"

#include "hageo/util/log.hpp"

namespace hageo::ar {

using graph::DeductionGraph;
using graph::Justification;

RoundReport ddar_round(DeductionGraph& g, const dd::RuleSet& rules,
                       dd::Clock::time_point deadline, const dd::Goals& goals) {
    RoundReport rep;
    auto sat = dd::saturate(g, rules, deadline, goals);
    rep.dd_added = sat.facts_added;
    rep.rule_fires = sat.rule_fire_counts;
    if (sat.stopped_by == dd::SaturationReport::StoppedBy::Goal) {
        rep.goal = true;
        return rep;
    }
    if (sat.stopped_by == dd::SaturationReport::StoppedBy::Timeout) {
        rep.timeout = true;
        return rep;
    }
    for (ArKind kind : {ArKind::Angle, ArKind::Ratio, ArKind::Length}) {
        if (dd::Clock::now() > deadline) {
            rep.timeout = true;
            return rep;
        }
        LinearSystem sys = encode_facts(g, kind);
        ReducedBasis basis = reduce(sys);
        auto findings = derive_equalities(basis, sys, g);
        for (auto& f : findings) {
            Justification j;
            j.kind = Justification::Kind::Algebraic;
            j.ar_kind = uint8_t(kind);
            j.antecedents = std::move(f.cites);
            if (g.assert_fact(f.pred, f.args, std::move(j)) != graph::kNoFact) rep.ar_added++;
        }
        if (dd::goals_met(g, goals)) {
            rep.goal = true;
            return rep;
        }
    }
    return rep;
}

DdarOutcome ddar_loop(DeductionGraph& g, const dd::RuleSet& rules,
                      std::chrono::duration<double> budget, const dd::Goals& goals) {
    DdarOutcome out;
    auto t0 = dd::Clock::now();
    auto deadline = t0 + std::chrono::duration_cast<dd::Clock::duration>(budget);
    for (;;) {
        RoundReport r = ddar_round(g, rules, deadline, goals);
        out.rounds++;
        out.facts_added += r.dd_added + r.ar_added;
        for (auto& [k, v] : r.rule_fires) out.rule_fires[k] += v;
        if (r.goal) {
            out.status = DdarOutcome::Status::Goal;
            break;
        }
        if (r.timeout) {
            out.status = DdarOutcome::Status::Timeout;
            break;
        }
        if (r.dd_added + r.ar_added == 0) {
            out.status = DdarOutcome::Status::Fixpoint;
            break;
        }
    }
    out.wall_s = std::chrono::duration<double>(dd::Clock::now() - t0).count();
    log::debug("ddar: %d rounds, %d facts, %.2fs, status=%d", out.rounds, out.facts_added,
               out.wall_s, int(out.status));
    return out;
}

} // namespace hageo::ar
