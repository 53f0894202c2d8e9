#include <random>
#include <string>

#include "doctest.h"

#include "obcheck/parser.hpp"
#include "support/ast_compare.hpp"
#include "support/generators.hpp"

using namespace obcheck;
namespace ts = obcheck::testsupport;

TEST_CASE("class with methods and empty main") {
    Program p = parse_source("class Car { void turnOn() {} void move() {} } main { }", "t.mo");
    REQUIRE(p.classes.size() == 1);
    const ClassDecl& car = p.classes[0];
    CHECK(car.name == "Car");
    REQUIRE(car.methods.size() == 2);
    CHECK(car.methods[0].name == "turnOn");
    CHECK(car.methods[0].arity == 0);
    CHECK(car.methods[0].return_type == "void");
    CHECK(car.methods[1].name == "move");
    CHECK(p.main_block.empty());
}

TEST_CASE("main block with declaration and call") {
    Program p = parse_source("main { Car c = new Car(); c.turnOn(); }", "t.mo");
    CHECK(p.classes.empty());
    REQUIRE(p.main_block.size() == 2);
    const auto& decl = std::get<VarDecl>(p.main_block[0].node);
    CHECK(decl.class_name == "Car");
    CHECK(decl.var_name == "c");
    CHECK(decl.ctor_arg_count == 0);
    const auto& call = std::get<MethodCall>(p.main_block[1].node);
    CHECK(call.receiver == "c");
    CHECK(call.method == "turnOn");
    CHECK(call.arg_count == 0);
    CHECK(p.source_file == "t.mo");
}

TEST_CASE("missing semicolon points at the offending token") {
    try {
        parse_source("main { Car c = new Car() }", "t.mo");
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(std::string(e.what()).find("expected ';'") != std::string::npos);
        CHECK(e.span().line == 1);
        CHECK(e.span().column == 26);
    }
}

TEST_CASE("method bodies are skipped, signatures kept") {
    Program p = parse_source(
        "class A { int f(int x, string y) { if (x > 0) { weird stuff here } } } main { }",
        "t.mo");
    REQUIRE(p.classes[0].methods.size() == 1);
    CHECK(p.classes[0].methods[0].arity == 2);
    CHECK(p.classes[0].methods[0].return_type == "int");
}

TEST_CASE("call arguments are counted") {
    Program p = parse_source("main { c.set(1, x, \"s\"); }", "t.mo");
    CHECK(std::get<MethodCall>(p.main_block[0].node).arg_count == 3);
}

TEST_CASE("if else and while nest") {
    Program p = parse_source(
        "main { if (a) { c.go(); } else { while (b) { c.stop(); } } }", "t.mo");
    REQUIRE(p.main_block.size() == 1);
    const auto& ifs = std::get<IfStmt>(p.main_block[0].node);
    CHECK(ifs.condition == "a");
    REQUIRE(ifs.then_block.size() == 1);
    REQUIRE(ifs.else_block.has_value());
    const auto& loop = std::get<WhileStmt>((*ifs.else_block)[0].node);
    CHECK(loop.condition == "b");
    CHECK(loop.body.size() == 1);
}

TEST_CASE("condition text keeps inner spacing") {
    Program p = parse_source("main { if ( x  >  0 ) { } }", "t.mo");
    CHECK(std::get<IfStmt>(p.main_block[0].node).condition == " x  >  0 ");
}

TEST_CASE("parse errors") {
    CHECK_THROWS_AS(parse_source("class Car {", "t.mo"), ParseError);          // unterminated
    CHECK_THROWS_AS(parse_source("main { c.go(); } zz", "t.mo"), ParseError);  // trailing
    CHECK_THROWS_AS(parse_source("class Car { } ", "t.mo"), ParseError);       // no main
    CHECK_THROWS_AS(parse_source("main { new Car(); }", "t.mo"), ParseError);
    CHECK_THROWS_AS(parse_source("main { Car c = Car(); }", "t.mo"), ParseError);
    CHECK_THROWS_AS(parse_source("main { c.go(,); }", "t.mo"), ParseError);
    CHECK_THROWS_AS(parse_source("main { if (a) c.go(); }", "t.mo"), ParseError);
}

TEST_CASE("duplicate class and duplicate method are rejected") {
    CHECK_THROWS_WITH_AS(parse_source("class A { } class A { } main { }", "t.mo"),
                         "duplicate class 'A'", ParseError);
    CHECK_THROWS_WITH_AS(parse_source("class A { void f() {} int f() {} } main { }", "t.mo"),
                         "duplicate method 'f' in class 'A'", ParseError);
}

TEST_CASE("constructor class must match the declared type") {
    try {
        parse_source("main { Car c = new Bus(); }", "t.mo");
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(std::string(e.what()).find("Bus") != std::string::npos);
    }
}

TEST_CASE("statement spans come after their parent's span") {
    Program p = parse_source(
        "main {\n  if (a) {\n    c.go();\n  } else {\n    c.stop();\n  }\n}\n", "t.mo");
    const auto& ifs = std::get<IfStmt>(p.main_block[0].node);
    CHECK(span_before(p.main_block[0].span(), ifs.then_block[0].span()));
    CHECK(span_before(p.main_block[0].span(), (*ifs.else_block)[0].span()));
}

namespace {

void check_span_nesting(const std::vector<Stmt>& stmts) {
    for (const Stmt& stmt : stmts) {
        if (const auto* ifs = std::get_if<IfStmt>(&stmt.node)) {
            for (const Stmt& child : ifs->then_block)
                CHECK(span_before(stmt.span(), child.span()));
            if (ifs->else_block)
                for (const Stmt& child : *ifs->else_block)
                    CHECK(span_before(stmt.span(), child.span()));
            check_span_nesting(ifs->then_block);
            if (ifs->else_block) check_span_nesting(*ifs->else_block);
        } else if (const auto* loop = std::get_if<WhileStmt>(&stmt.node)) {
            for (const Stmt& child : loop->body)
                CHECK(span_before(stmt.span(), child.span()));
            check_span_nesting(loop->body);
        }
    }
}

}  // namespace

TEST_CASE("pretty-printed programs reparse to the same structure") {
    std::mt19937 rng(42);
    std::vector<ts::ClassSketch> classes = {{"Car", {"turnOn", "move"}},
                                            {"Door", {"open", "close", "lock"}}};
    for (int i = 0; i < 200; ++i) {
        Program original = ts::random_program(rng, classes);
        Program reparsed = parse_source(to_source(original), "gen.mo");
        CHECK(ts::same_structure(original, reparsed));
        check_span_nesting(reparsed.main_block);
    }
}

TEST_CASE("pretty-printing a parsed program is stable") {
    const char* source =
        "class Car {\n  void turnOn() {}\n}\n\nmain {\n  Car c = new Car();\n  c.turnOn();\n"
        "  if (x > 0) {\n    c.turnOn();\n  } else {\n    while (y) {\n      c.turnOn();\n"
        "    }\n  }\n}\n";
    Program first = parse_source(source, "t.mo");
    std::string printed = to_source(first);
    Program second = parse_source(printed, "t.mo");
    CHECK(ts::same_structure(first, second));
    CHECK(printed == to_source(second));
}
