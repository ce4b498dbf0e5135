#pragma once
#include <stdexcept>
#include <string>
#include <vector>

namespace hageo::glang {

enum class ObjKind { Point, Line, Circle };

inline const char* kind_name(ObjKind k) {
    switch (k) {
        case ObjKind::Point: return "point";
        case ObjKind::Line: return "line";
        case ObjKind::Circle: return "circle";
    }
    return "?";
}

struct Statement {
    std::vector<std::string> lhs_names;
    std::string constructor;
    std::vector<std::string> args;   // identifiers; numeric literals rejected downstream
    int line = 0;
};

struct GoalStatement {
    std::string predicate;
    std::vector<std::string> args;
    int line = 0;
};

struct Program {
    std::vector<Statement> statements;
    GoalStatement goal;
};

struct SyntaxError : std::runtime_error {
    int line, column;
    SyntaxError(int l, int c, const std::string& msg)
        : std::runtime_error("line " + std::to_string(l) + ":" + std::to_string(c) + ": " + msg),
          line(l), column(c) {}
};
struct MissingGoal : std::runtime_error {
    MissingGoal() : std::runtime_error("program has no Prove: clause") {}
};
struct DuplicateDefinition : std::runtime_error {
    std::string name;
    explicit DuplicateDefinition(const std::string& n, int line)
        : std::runtime_error("line " + std::to_string(line) + ": identifier '" + n + "' assigned twice"),
          name(n) {}
};

Program parse_program(const std::string& text);

// canonical rendering; parse(render(p)) is structurally equal to p
std::string render(const Program& p);

bool structurally_equal(const Program& a, const Program& b);

} // namespace hageo::glang
