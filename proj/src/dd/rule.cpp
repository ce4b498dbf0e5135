#include "hageo/dd/rule.hpp"

#include <map>
#include <sstream>

namespace hageo::dd {

using glang::ObjKind;
using graph::Pred;

namespace {

struct RuleBuilder {
    Rule r;
    std::map<std::string, uint8_t> vars;

    uint8_t var(const std::string& name, ObjKind kind) {
        auto it = vars.find(name);
        if (it != vars.end()) {
            if (r.var_kinds[it->second] != kind)
                throw RuleParseError(r.name + ": variable " + name + " used with two kinds");
            return it->second;
        }
        uint8_t id = uint8_t(r.var_names.size());
        vars[name] = id;
        r.var_names.push_back(name);
        r.var_kinds.push_back(kind);
        return id;
    }

    Term term(const std::string& tok, char slot) {
        auto dash = tok.find('-');
        if (dash != std::string::npos) {
            if (slot != 'L') throw RuleParseError(r.name + ": line term in a non-line slot");
            Term t;
            t.line_of = true;
            t.v0 = var(tok.substr(0, dash), ObjKind::Point);
            t.v1 = var(tok.substr(dash + 1), ObjKind::Point);
            return t;
        }
        ObjKind k = slot == 'P' ? ObjKind::Point : slot == 'L' ? ObjKind::Line : ObjKind::Circle;
        Term t;
        t.v0 = var(tok, k);
        return t;
    }

    Atom atom(const std::vector<std::string>& toks) {
        Pred p;
        if (!graph::pred_from_name(toks[0], p))
            throw RuleParseError(r.name + ": unknown predicate " + toks[0]);
        if (int(toks.size()) - 1 != graph::pred_arity(p))
            throw RuleParseError(r.name + ": arity of " + toks[0]);
        Atom a;
        a.pred = p;
        const char* ks = graph::pred_argkinds(p);
        for (size_t i = 1; i < toks.size(); ++i) a.args.push_back(term(toks[i], ks[i - 1]));
        return a;
    }

    SideCond side(const std::vector<std::string>& toks) {
        SideCond s;
        size_t want = 0;
        char slot = 'P';
        if (toks[0] == "distinct") { s.kind = SideCond::Kind::Distinct; want = 2; }
        else if (toks[0] == "noncoll") { s.kind = SideCond::Kind::NonColl; want = 3; }
        else if (toks[0] == "notpara") { s.kind = SideCond::Kind::NotPara; want = 2; slot = 'L'; }
        else if (toks[0] == "sameclock") { s.kind = SideCond::Kind::SameClock; want = 6; }
        else if (toks[0] == "oppclock") { s.kind = SideCond::Kind::OppClock; want = 6; }
        else throw RuleParseError(r.name + ": unknown side condition " + toks[0]);
        if (toks.size() - 1 != want) throw RuleParseError(r.name + ": side arity " + toks[0]);
        for (size_t i = 1; i < toks.size(); ++i) s.args.push_back(term(toks[i], slot));
        return s;
    }
};

std::vector<std::string> split_ws(const std::string& s) {
    std::istringstream is(s);
    std::vector<std::string> out;
    std::string t;
    while (is >> t) out.push_back(t);
    return out;
}

std::vector<std::string> split_on(const std::string& s, const std::string& sep) {
    std::vector<std::string> parts;
    size_t pos = 0;
    for (;;) {
        size_t p = s.find(sep, pos);
        if (p == std::string::npos) {
            parts.push_back(s.substr(pos));
            return parts;
        }
        parts.push_back(s.substr(pos, p - pos));
        pos = p + sep.size();
    }
}

} // namespace

RuleSet parse_rules(const std::string& text) {
    RuleSet set;
    std::istringstream is(text);
    std::string line;
    while (std::getline(is, line)) {
        auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        if (split_ws(line).empty()) continue;
        auto colon = line.find(':');
        if (colon == std::string::npos) throw RuleParseError("rule line without name: " + line);

        RuleBuilder b;
        b.r.name = line.substr(0, colon);
        while (!b.r.name.empty() && b.r.name.back() == ' ') b.r.name.pop_back();
        while (!b.r.name.empty() && b.r.name.front() == ' ') b.r.name.erase(b.r.name.begin());
        if (!b.r.name.empty() && b.r.name[0] == '~') {
            b.r.enabled = false;
            b.r.name.erase(b.r.name.begin());
        }
        std::string body = line.substr(colon + 1);

        auto arrow = split_on(body, "=>");
        if (arrow.size() != 2) throw RuleParseError(b.r.name + ": expected one =>");
        auto semi = split_on(arrow[0], ";");
        for (const auto& at : split_on(semi[0], ",")) {
            auto toks = split_ws(at);
            if (toks.empty()) throw RuleParseError(b.r.name + ": empty antecedent");
            b.r.antecedents.push_back(b.atom(toks));
        }
        for (size_t i = 1; i < semi.size(); ++i) {
            auto toks = split_ws(semi[i]);
            if (toks.empty()) continue;
            b.r.sides.push_back(b.side(toks));
        }
        auto ctoks = split_ws(arrow[1]);
        if (ctoks.empty()) throw RuleParseError(b.r.name + ": empty consequent");
        b.r.consequent = b.atom(ctoks);
        set.rules.push_back(std::move(b.r));
    }
    return set;
}

const RuleSet& builtin_rules() {
    static RuleSet set = parse_rules(builtin_rules_text());
    return set;
}

} // namespace hageo::dd
