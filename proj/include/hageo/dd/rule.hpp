#pragma once
#include <stdexcept>
#include <string>
#include <vector>

#include "hageo/glang/ast.hpp"
#include "hageo/graph/fact.hpp"

namespace hageo::dd {

// term in a rule pattern: a variable, or the line through two point variables
struct Term {
    bool line_of = false;
    uint8_t v0 = 0, v1 = 0;
};

struct Atom {
    graph::Pred pred;
    std::vector<Term> args;
};

struct SideCond {
    enum class Kind { Distinct, NonColl, NotPara, SameClock, OppClock };
    Kind kind;
    std::vector<Term> args;
};

struct Rule {
    std::string name;
    std::vector<Atom> antecedents;
    Atom consequent;
    std::vector<SideCond> sides;
    std::vector<std::string> var_names;       // index = variable id
    std::vector<glang::ObjKind> var_kinds;
    bool enabled = true;
};

struct RuleSet {
    std::vector<Rule> rules;
    const Rule* by_name(const std::string& n) const {
        for (const auto& r : rules)
            if (r.name == n) return &r;
        return nullptr;
    }
    int index_of(const std::string& n) const {
        for (size_t i = 0; i < rules.size(); ++i)
            if (rules[i].name == n) return int(i);
        return -1;
    }
};

struct RuleParseError : std::runtime_error {
    explicit RuleParseError(const std::string& m) : std::runtime_error(m) {}
};

// Text format, one rule per line:
//   name: pred args , pred args ; side args => pred args
// Tokens are whitespace separated; A-B denotes the line through point
// variables A and B; lowercase single tokens in L slots are line variables.
// A leading '~' disables the rule (kept in the set, toggleable).
RuleSet parse_rules(const std::string& text);

const std::string& builtin_rules_text();
const RuleSet& builtin_rules();

} // namespace hageo::dd
