#pragma once
#include <optional>
#include <string>
#include <vector>

#include "hageo/glang/ast.hpp"

namespace hageo::glang {

// Signature strings: P point, L line, C circle, K curve (line or circle).
struct ConstructorSig {
    std::string lhs;       // kinds of bound names
    std::string args;      // kinds of arguments
};

struct ConstructorInfo {
    std::string name;
    std::vector<ConstructorSig> sigs;
};

const std::vector<ConstructorInfo>& constructor_table();
const ConstructorInfo* find_constructor(const std::string& name);

// goal predicate -> allowed argument signatures
struct GoalSig {
    std::string name;
    std::vector<std::string> arg_forms;
};
const std::vector<GoalSig>& goal_table();
const GoalSig* find_goal(const std::string& name);

} // namespace hageo::glang
