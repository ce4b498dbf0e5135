#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "hageo/glang/ast.hpp"
#include "hageo/glang/plan.hpp"
#include "hageo/glang/validate.hpp"

using namespace hageo;
using namespace hageo::glang;

static const char* kAppC =
    "A B C = triangle; O = circumcenter A B C; (O) = circumcircle A B C; "
    "I = incenter A B C; AI = line A I; D = intersection AI (O); BC = line B C; "
    "F = on_line BC; l = angle_equal1 A C B A F; E = intersection l (O); "
    "G = midpoint I F; DG = line D G; EI = line E I; K = intersection DG EI; "
    "Prove: cong O A O K";

TEST_CASE("appendix program parses to 14 statements plus goal") {
    Program p = parse_program(kAppC);
    CHECK(p.statements.size() == 14);
    CHECK(p.goal.predicate == "cong");
    CHECK(p.goal.args == std::vector<std::string>{"O", "A", "O", "K"});
    CHECK(p.statements[2].lhs_names[0] == "(O)");  // identifiers preserved verbatim
    CHECK(p.statements[8].constructor == "angle_equal1");
}

TEST_CASE("missing goal and malformed statements") {
    CHECK_THROWS_AS(parse_program(""), MissingGoal);
    CHECK_THROWS_AS(parse_program("A = point\n"), MissingGoal);
    CHECK_THROWS_AS(parse_program("X = midpoint A; Prove: cong X A X A"), SyntaxError);
    CHECK_THROWS_AS(parse_program("= midpoint A B; Prove: cong A B A B"), SyntaxError);
    CHECK_THROWS_AS(parse_program("A = point; A = point; Prove: collinear A A A"),
                    DuplicateDefinition);
}

TEST_CASE("render round-trips to a structurally equal program") {
    for (const char* src : {kAppC,
                            "A B C = triangle # a comment\nM = midpoint B C\nProve: collinear A M M",
                            "P = point; Q = point; l = line P Q; X = on_line l; Prove: collinear P Q X"}) {
        Program p = parse_program(src);
        Program q = parse_program(render(p));
        CHECK(structurally_equal(p, q));
        CHECK(render(p) == render(q));
    }
}

TEST_CASE("validation resolves kinds") {
    auto v = validate_program(parse_program(kAppC));
    for (const char* pt : {"A", "B", "C", "O", "I", "D", "F", "E", "G", "K"})
        CHECK(v.kinds.at(pt) == ObjKind::Point);
    for (const char* ln : {"AI", "BC", "DG", "EI", "l"})
        CHECK(v.kinds.at(ln) == ObjKind::Line);
    CHECK(v.kinds.at("(O)") == ObjKind::Circle);
}

TEST_CASE("validation errors") {
    CHECK_THROWS_AS(validate_program(parse_program("l = line A Z; Prove: collinear A Z Z")),
                    UndefinedReference);
    CHECK_THROWS_AS(
        validate_program(parse_program("A = point; B = point; X = intersection A B; Prove: cong A B A X")),
        KindMismatch);
    CHECK_THROWS_AS(validate_program(parse_program("A = widget; Prove: collinear A A A")),
                    UnsupportedConstructor);
    CHECK_THROWS_AS(validate_program(parse_program("aux1 = point; Prove: collinear aux1 aux1 aux1")),
                    KindMismatch);
    CHECK_THROWS_AS(validate_program(parse_program("A = point; B = point; Prove: nonsense A B")),
                    UnsupportedConstructor);
}

TEST_CASE("elaboration expands compound constructors") {
    auto v = validate_program(parse_program(
        "I = point; F = point; G = midpoint I F; Prove: cong G I G F"));
    ConstructionPlan plan = elaborate(v);
    bool found = false;
    for (const auto& f : plan.facts)
        if (f.pred == "midp" && plan.steps[f.args[0].obj].name == "G") found = true;
    CHECK(found);
    CHECK(plan.goal.size() == 1);
    CHECK(plan.goal[0].pred == "cong");
}

TEST_CASE("degenerate elaborations rejected") {
    auto bad = validate_program(parse_program("A = point; M = midpoint A A; Prove: cong M A M A"));
    CHECK_THROWS_AS(elaborate(bad), ElaborationError);
    auto nocc = validate_program(
        parse_program("A B C = triangle; (O) = circumcircle A B C; Prove: collinear A B C"));
    CHECK_THROWS_AS(elaborate(nocc), ElaborationError);
}

TEST_CASE("incenter elaborates to two bisector constraints") {
    auto v = validate_program(parse_program("A B C = triangle; I = incenter A B C; Prove: collinear A I I"));
    ConstructionPlan plan = elaborate(v);
    int bisectors = 0;
    for (const auto& f : plan.facts)
        if (f.pred == "eqangle") ++bisectors;
    CHECK(bisectors == 2);
}

TEST_CASE("circumcenter goal desugars to two congruences") {
    auto v = validate_program(parse_program(
        "A B C = triangle; O = circumcenter A B C; Prove: circumcenter O A B C"));
    ConstructionPlan plan = elaborate(v);
    CHECK(plan.goal.size() == 2);
    CHECK(plan.goal[0].pred == "cong");
    CHECK(plan.goal[1].pred == "cong");
}

TEST_CASE("single assignment holds for accepted programs") {
    auto v = validate_program(parse_program(kAppC));
    std::map<std::string, int> defs;
    for (const auto& st : v.program.statements)
        for (const auto& n : st.lhs_names) defs[n]++;
    for (const auto& [n, c] : defs) {
        CAPTURE(n);
        CHECK(c == 1);
    }
}
