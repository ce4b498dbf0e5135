#include "hageo/heuristic/attempt.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

#include "hageo/util/log.hpp"

namespace hageo::heuristic {

using glang::ConstructionPlan;
using glang::kNone;
using glang::Statement;
using numeric::Diagram;

std::string render_statement(const Statement& st) {
    std::string s;
    for (size_t i = 0; i < st.lhs_names.size(); ++i) s += (i ? " " : "") + st.lhs_names[i];
    s += " = " + st.constructor;
    for (const auto& a : st.args) s += " " + a;
    return s;
}

namespace {

// category 6: a random basic construction over random compatible objects
struct RandomDraw {
    const ConstructionPlan& plan;
    Rng& rng;
    int* fresh;

    std::vector<std::string> points, lines, circles;

    explicit RandomDraw(const ConstructionPlan& p, Rng& r, int* f) : plan(p), rng(r), fresh(f) {
        for (const auto& st : plan.steps) {
            if (st.kind == glang::ObjKind::Point) points.push_back(st.name);
            else if (st.kind == glang::ObjKind::Line) lines.push_back(st.name);
            else circles.push_back(st.name);
        }
    }

    std::string fresh_name() { return "aux" + std::to_string((*fresh)++); }

    std::string pick(const std::vector<std::string>& v) { return v[rng.below(v.size())]; }

    std::vector<std::string> pick_distinct(int n) {
        std::vector<std::string> out;
        while (int(out.size()) < n) {
            std::string p = pick(points);
            if (std::find(out.begin(), out.end(), p) == out.end()) out.push_back(p);
        }
        return out;
    }

    std::vector<Statement> draw() {
        // constructors weighted uniformly; ones lacking compatible objects
        // fall through and redraw
        for (int tries = 0; tries < 8; ++tries) {
            int k = int(rng.below(7));
            Statement st;
            st.lhs_names = {fresh_name()};
            switch (k) {
                case 0: {
                    if (points.size() < 2) break;
                    st.constructor = "midpoint";
                    st.args = pick_distinct(2);
                    return {st};
                }
                case 1: {
                    if (points.size() < 3) break;
                    st.constructor = "foot";
                    st.args = pick_distinct(3);
                    return {st};
                }
                case 2: {
                    if (points.size() < 2) break;
                    st.constructor = "reflection";
                    st.args = pick_distinct(2);
                    return {st};
                }
                case 3: {
                    if (points.size() < 3) break;
                    st.constructor = "circumcenter";
                    st.args = pick_distinct(3);
                    return {st};
                }
                case 4: {
                    if (points.size() < 2) break;
                    st.constructor = "equilateral_apex";
                    st.args = pick_distinct(2);
                    return {st};
                }
                case 5: {
                    // a point on a named curve
                    if (lines.empty() && circles.empty()) break;
                    bool use_line = circles.empty() || (!lines.empty() && rng.below(2) == 0);
                    st.constructor = use_line ? "on_line" : "on_circle";
                    st.args = {use_line ? pick(lines) : pick(circles)};
                    return {st};
                }
                case 6: {
                    // intersection of two named curves
                    std::vector<std::string> curves = lines;
                    curves.insert(curves.end(), circles.begin(), circles.end());
                    if (curves.size() < 2) break;
                    std::string c1 = curves[rng.below(curves.size())];
                    std::string c2 = curves[rng.below(curves.size())];
                    if (c1 == c2) break;
                    st.constructor = "intersection";
                    st.args = {c1, c2};
                    return {st};
                }
            }
            (*fresh)--;  // name not consumed
        }
        return {};
    }
};

} // namespace

AuxAttempt sample_attempt(const ConstructionPlan& base, uint64_t seed, const AttemptConfig& cfg) {
    AuxAttempt at;
    at.rng_seed = seed;
    at.extended = base;
    Rng rng(seed ^ 0xa5a5a5a5a5a5a5a5ULL);
    int fresh = 1;
    while (at.extended.index.count("aux" + std::to_string(fresh))) ++fresh;

    Diagram dprev;
    bool have_prev = false;
    for (int round = 0; round < cfg.rounds; ++round) {
        Diagram d;
        try {
            d = numeric::sample_diagram(at.extended, seed, cfg.heur.numeric,
                                        have_prev ? &dprev : nullptr);
        } catch (const std::exception& e) {
            throw AttemptDegenerate(std::string("round diagram: ") + e.what());
        }
        auto g = graph::build_graph(at.extended, &d, &cfg.heur.numeric, graph::GuardMode::Off,
                                    at.extended.base_statements);
        auto cands = enumerate_candidates(at.extended, d, g, cfg.heur);

        std::map<Category, std::vector<const AuxCandidate*>> by_cat;
        for (const auto& c : cands) by_cat[c.category].push_back(&c);

        bool use_random = by_cat.empty() || rng.uniform() < cfg.heur.category6_weight;
        std::vector<Statement> chosen;
        Category chosen_cat = Category::Random;
        std::string wit = "random construction";
        if (!use_random) {
            // uniform over non-empty categories, then uniform within
            std::vector<Category> cats;
            for (auto& [c, v] : by_cat) cats.push_back(c);
            Category cat = cats[rng.below(cats.size())];
            const AuxCandidate* c = by_cat[cat][rng.below(by_cat[cat].size())];
            chosen = c->construction;
            chosen_cat = c->category;
            wit = c->witnesses;
        } else {
            RandomDraw rd(at.extended, rng, &fresh);
            chosen = rd.draw();
            if (chosen.empty())
                throw AttemptDegenerate("no random construction available");
        }

        ConstructionPlan trial = at.extended;
        try {
            glang::extend_plan(trial, chosen);
            dprev = numeric::sample_diagram(trial, seed, cfg.heur.numeric,
                                            have_prev ? &dprev : nullptr);
            have_prev = true;
        } catch (const std::exception& e) {
            throw AttemptDegenerate(std::string("round construction: ") + e.what());
        }
        at.extended = std::move(trial);
        // candidate constructions consume fresh aux names; resynchronize
        while (at.extended.index.count("aux" + std::to_string(fresh))) ++fresh;
        at.rounds.push_back({chosen_cat, std::move(chosen), wit});
    }
    return at;
}

std::string attempt_key(const AuxAttempt& a) {
    // alpha-rename aux identifiers in order of first appearance
    std::map<std::string, std::string> ren;
    auto canon = [&](const std::string& n) -> std::string {
        if (n.size() >= 4 && n.compare(0, 3, "aux") == 0) {
            auto it = ren.find(n);
            if (it != ren.end()) return it->second;
            std::string r = "#" + std::to_string(ren.size() + 1);
            ren[n] = r;
            return r;
        }
        return n;
    };
    std::vector<std::string> stmts;
    for (const auto& r : a.rounds)
        for (const auto& st : r.construction) {
            std::string s;
            for (const auto& n : st.lhs_names) s += canon(n) + " ";
            s += "= " + st.constructor;
            for (const auto& n : st.args) s += " " + canon(n);
            stmts.push_back(s);
        }
    std::sort(stmts.begin(), stmts.end());
    std::string key;
    for (const auto& s : stmts) key += s + ";";
    return key;
}

std::vector<AuxAttempt> dedup_attempts(std::vector<AuxAttempt> attempts) {
    std::set<std::string> seen;
    std::vector<AuxAttempt> out;
    for (auto& a : attempts)
        if (seen.insert(attempt_key(a)).second) out.push_back(std::move(a));
    return out;
}

} // namespace hageo::heuristic
