#include <random>
#include <variant>

#include "doctest.h"

#include "obcheck/parser.hpp"
#include "obcheck/usage.hpp"
#include "support/generators.hpp"

using namespace obcheck;
namespace ts = obcheck::testsupport;

namespace {

int count_method_calls(const std::vector<Stmt>& stmts) {
    int count = 0;
    for (const Stmt& stmt : stmts) {
        if (std::holds_alternative<MethodCall>(stmt.node)) {
            ++count;
        } else if (const auto* ifs = std::get_if<IfStmt>(&stmt.node)) {
            count += count_method_calls(ifs->then_block);
            if (ifs->else_block) count += count_method_calls(*ifs->else_block);
        } else if (const auto* loop = std::get_if<WhileStmt>(&stmt.node)) {
            count += count_method_calls(loop->body);
        }
    }
    return count;
}

bool is_flat_seq(const UsageNode& tree) {
    const auto* seq = std::get_if<SeqNode>(&tree.node);
    if (seq == nullptr) return false;
    for (const UsageNode& child : seq->children)
        if (!std::holds_alternative<CallNode>(child.node)) return false;
    return true;
}

}  // namespace

TEST_CASE("linear program projects to a flat sequence") {
    Program p = parse_source("main { Car c = new Car(); c.turnOn(); c.move(); }", "t.mo");
    UsageSet usages = extract_usages(p);
    REQUIRE(usages.usages.size() == 1);
    const ObjectUsage& c = usages.usages[0];
    CHECK(c.var_name == "c");
    CHECK(c.class_name == "Car");
    auto calls = flatten_calls(c.tree);
    REQUIRE(calls.size() == 2);
    CHECK(calls[0].method == "turnOn");
    CHECK(calls[1].method == "move");
    CHECK(usages.orphan_calls.empty());
    CHECK(usages.source_file == "t.mo");
}

TEST_CASE("empty main extracts to nothing") {
    UsageSet usages = extract_usages(parse_source("main { }", "t.mo"));
    CHECK(usages.usages.empty());
    CHECK(usages.orphan_calls.empty());
}

TEST_CASE("calls on undeclared receivers become orphans") {
    UsageSet usages = extract_usages(parse_source("main { d.go(); }", "t.mo"));
    CHECK(usages.usages.empty());
    REQUIRE(usages.orphan_calls.size() == 1);
    CHECK(usages.orphan_calls[0].first == "d");
    CHECK(usages.orphan_calls[0].second.method == "go");
}

TEST_CASE("a call before its declaration is an orphan, not a usage") {
    UsageSet usages = extract_usages(
        parse_source("main { c.go(); Car c = new Car(); c.stop(); }", "t.mo"));
    REQUIRE(usages.usages.size() == 1);
    auto calls = flatten_calls(usages.usages[0].tree);
    REQUIRE(calls.size() == 1);
    CHECK(calls[0].method == "stop");
    REQUIRE(usages.orphan_calls.size() == 1);
    CHECK(usages.orphan_calls[0].second.method == "go");
}

TEST_CASE("duplicate declarations are an error") {
    Program p = parse_source("main { Car c = new Car(); Car c = new Car(); }", "t.mo");
    CHECK_THROWS_AS(extract_usages(p), ExtractError);
    Program nested = parse_source("main { Car c = new Car(); if (a) { Car c = new Car(); } }",
                                  "t.mo");
    CHECK_THROWS_AS(extract_usages(nested), ExtractError);
}

TEST_CASE("branch and loop nodes are kept even when empty for an object") {
    Program p = parse_source(
        "main { Car c = new Car(); Car d = new Car(); if (a) { c.go(); } while (b) { d.go(); } }",
        "t.mo");
    UsageSet usages = extract_usages(p);
    REQUIRE(usages.usages.size() == 2);

    const auto& c_seq = std::get<SeqNode>(usages.usages[0].tree.node);
    REQUIRE(c_seq.children.size() == 2);
    CHECK(std::holds_alternative<BranchNode>(c_seq.children[0].node));
    CHECK(std::holds_alternative<LoopNode>(c_seq.children[1].node));
    const auto& c_loop = std::get<LoopNode>(c_seq.children[1].node);
    CHECK(flatten_calls(*c_loop.body).empty());

    const auto& d_seq = std::get<SeqNode>(usages.usages[1].tree.node);
    const auto& d_branch = std::get<BranchNode>(d_seq.children[0].node);
    CHECK(flatten_calls(*d_branch.then_tree).empty());
    CHECK(d_branch.else_tree == nullptr);
    CHECK(flatten_calls(*std::get<LoopNode>(d_seq.children[1].node).body).size() == 1);
}

TEST_CASE("declarations inside blocks are picked up in pre-order") {
    Program p = parse_source(
        "main { Car a = new Car(); if (x) { Car b = new Car(); b.go(); } a.stop(); }", "t.mo");
    UsageSet usages = extract_usages(p);
    REQUIRE(usages.usages.size() == 2);
    CHECK(usages.usages[0].var_name == "a");
    CHECK(usages.usages[1].var_name == "b");
    CHECK(flatten_calls(usages.usages[1].tree).size() == 1);
    CHECK(usages.orphan_calls.empty());
}

TEST_CASE("projection keeps only the object's own calls, in source order") {
    Program p = parse_source(
        "main { Car a = new Car(); Car b = new Car(); a.one(); b.two(); a.three(); }", "t.mo");
    UsageSet usages = extract_usages(p);
    auto a_calls = flatten_calls(usages.usages[0].tree);
    REQUIRE(a_calls.size() == 2);
    CHECK(a_calls[0].method == "one");
    CHECK(a_calls[1].method == "three");
    CHECK(span_before(a_calls[0].span, a_calls[1].span));
    CHECK(flatten_calls(usages.usages[1].tree).size() == 1);
}

TEST_CASE("lookup_class finds declared classes only") {
    Program p = parse_source("class Car { void go() {} } main { }", "t.mo");
    REQUIRE(lookup_class(p, "Car") != nullptr);
    CHECK(lookup_class(p, "Car")->methods.size() == 1);
    CHECK(lookup_class(p, "Bus") == nullptr);
    Program empty = parse_source("main { }", "t.mo");
    CHECK(lookup_class(empty, "Car") == nullptr);
}

TEST_CASE("every call lands in exactly one tree or in orphans") {
    std::mt19937 rng(7);
    std::vector<ts::ClassSketch> classes = {{"Car", {"turnOn", "move", "brake"}},
                                            {"Door", {"open", "close"}}};
    for (int i = 0; i < 300; ++i) {
        Program program = ts::random_program(rng, classes);
        UsageSet usages = extract_usages(program);
        std::size_t total = 0;
        for (const ObjectUsage& usage : usages.usages) {
            auto calls = flatten_calls(usage.tree);
            total += calls.size();
            for (std::size_t k = 1; k < calls.size(); ++k)
                CHECK(span_before(calls[k - 1].span, calls[k].span));
        }
        total += usages.orphan_calls.size();
        CHECK(total == static_cast<std::size_t>(count_method_calls(program.main_block)));
    }
}

TEST_CASE("programs without control flow always project to flat sequences") {
    Program p = parse_source(
        "main { Car a = new Car(); a.x(); a.y(); Car b = new Car(); b.z(); }", "t.mo");
    for (const ObjectUsage& usage : extract_usages(p).usages)
        CHECK(is_flat_seq(usage.tree));
}
