#pragma once
#include <map>
#include <string>

#include "hageo/glang/ast.hpp"

namespace hageo::glang {

struct UndefinedReference : std::runtime_error {
    std::string name;
    UndefinedReference(const std::string& n, int line)
        : std::runtime_error("line " + std::to_string(line) + ": undefined reference '" + n + "'"),
          name(n) {}
};
struct KindMismatch : std::runtime_error {
    KindMismatch(const std::string& expected, const std::string& got, int line)
        : std::runtime_error("line " + std::to_string(line) + ": expected " + expected + ", got " + got) {}
};
struct UnsupportedConstructor : std::runtime_error {
    std::string name;
    UnsupportedConstructor(const std::string& n, int line)
        : std::runtime_error("line " + std::to_string(line) + ": unsupported constructor '" + n + "'"),
          name(n) {}
};

struct ValidatedProgram {
    Program program;
    std::map<std::string, ObjKind> kinds;           // every defined identifier
    std::vector<int> sig_choice;                    // chosen signature index per statement
    int goal_sig = 0;                               // chosen goal argument form
};

ValidatedProgram validate_program(const Program& p);

} // namespace hageo::glang
