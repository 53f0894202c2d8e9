#include <string>

#include "doctest.h"

#include "obcheck/parser.hpp"
#include "obcheck/protocol.hpp"
#include "obcheck/usage.hpp"
#include "support/io.hpp"

using namespace obcheck;
namespace ts = obcheck::testsupport;

TEST_CASE("minimal protocol") {
    ProtocolSpec spec = parse_protocol("protocol P for C { initial state A; }", "p.obp");
    CHECK(spec.protocol_name == "P");
    CHECK(spec.class_name == "C");
    REQUIRE(spec.states.size() == 1);
    CHECK(spec.states[0].id == 0);
    CHECK(spec.states[0].name == "A");
    CHECK(spec.states[0].is_initial);
    CHECK_FALSE(spec.states[0].is_final);
    CHECK(spec.transitions.empty());
    CHECK(spec.initial_state() == 0);
}

TEST_CASE("car fixture parses with dense ids in declaration order") {
    ProtocolSpec spec = parse_protocol(ts::fixture("car.obp"), "car.obp");
    REQUIRE(spec.states.size() == 5);
    const char* names[] = {"Off", "Start", "Move", "Stop", "MoreSpeed"};
    for (int i = 0; i < 5; ++i) {
        CHECK(spec.states[static_cast<std::size_t>(i)].id == i);
        CHECK(spec.states[static_cast<std::size_t>(i)].name == names[i]);
        CHECK(spec.states[static_cast<std::size_t>(i)].is_initial == (i == 0));
    }
    CHECK(spec.transitions.size() == 8);
    CHECK(spec.method_alphabet() ==
          std::set<std::string>{"turnOn", "turnOff", "move", "brake", "accelerate",
                                "decelerate"});
}

TEST_CASE("missing initial state is a structural error") {
    try {
        parse_protocol("protocol P for C { state A; }", "p.obp");
        FAIL("expected ProtocolStructureError");
    } catch (const ProtocolStructureError& e) {
        CHECK(e.error().kind == SpecErrorKind::NoInitialState);
        CHECK(e.error().message.find("P") != std::string::npos);
    }
}

TEST_CASE("structural errors name the offending state") {
    try {
        parse_protocol("protocol P for C { initial state A; initial state B; }", "p.obp");
        FAIL("expected ProtocolStructureError");
    } catch (const ProtocolStructureError& e) {
        CHECK(e.error().kind == SpecErrorKind::MultipleInitialStates);
        CHECK(e.error().message.find("B") != std::string::npos);
    }
    try {
        parse_protocol("protocol P for C { initial state A; state A; }", "p.obp");
        FAIL("expected ProtocolStructureError");
    } catch (const ProtocolStructureError& e) {
        CHECK(e.error().kind == SpecErrorKind::DuplicateStateName);
    }
    try {
        parse_protocol("protocol P for C { initial state A; A -> Ghost on go; }", "p.obp");
        FAIL("expected ProtocolStructureError");
    } catch (const ProtocolStructureError& e) {
        CHECK(e.error().kind == SpecErrorKind::UnknownStateReference);
        CHECK(e.error().message.find("Ghost") != std::string::npos);
        CHECK(e.error().span.line == 1);
    }
}

TEST_CASE("transitions may reference states declared later") {
    ProtocolSpec spec =
        parse_protocol("protocol P for C { initial state A; A -> B on go; state B; }", "p.obp");
    REQUIRE(spec.transitions.size() == 1);
    CHECK(spec.transitions[0].from == 0);
    CHECK(spec.transitions[0].to == 1);
}

TEST_CASE("guard and action labels are stored verbatim") {
    ProtocolSpec spec = parse_protocol(
        "protocol P for C { initial state A; state B; "
        "A -> B on go when \"fuel > 0\" do \"start engine\"; }",
        "p.obp");
    REQUIRE(spec.transitions.size() == 1);
    CHECK(spec.transitions[0].guard_label == "fuel > 0");
    CHECK(spec.transitions[0].action_label == "start engine");
}

TEST_CASE("final state flags parse") {
    ProtocolSpec spec = parse_protocol(
        "protocol P for C { initial state A; final state B; A -> B on go; }", "p.obp");
    CHECK_FALSE(spec.states[0].is_final);
    CHECK(spec.states[1].is_final);
}

TEST_CASE("protocol syntax errors are ParseErrors") {
    CHECK_THROWS_AS(parse_protocol("protocol P { }", "p.obp"), ParseError);
    CHECK_THROWS_AS(parse_protocol("protocol P for C { state A }", "p.obp"), ParseError);
    CHECK_THROWS_AS(parse_protocol("protocol P for C { A -> B go; }", "p.obp"), ParseError);
    CHECK_THROWS_AS(parse_protocol("protocol P for C { initial state A; } extra", "p.obp"),
                    ParseError);
    CHECK_THROWS_AS(parse_protocol("", "p.obp"), ParseError);
}

TEST_CASE("validate accepts the car fixture against its class") {
    ProtocolSpec spec = parse_protocol(ts::fixture("car.obp"), "car.obp");
    Program program = parse_source(ts::fixture("car_ok.mo"), "car_ok.mo");
    CHECK(validate(spec, lookup_class(program, "Car")).empty());
    CHECK(validate(spec).empty());
}

TEST_CASE("duplicate (state, method) pairs are nondeterministic") {
    ProtocolSpec spec = parse_protocol(
        "protocol P for C { initial state Off; state Start; state Move; "
        "Off -> Start on turnOn; Off -> Move on turnOn; Start -> Move on move; }",
        "p.obp");
    auto findings = validate(spec);
    REQUIRE(findings.size() == 1);
    CHECK(findings[0].kind == SpecErrorKind::NondeterministicTransition);
    CHECK(findings[0].severity == Severity::Error);
    CHECK(findings[0].message.find("Off") != std::string::npos);
    CHECK(findings[0].message.find("turnOn") != std::string::npos);
}

TEST_CASE("unknown methods are reported against the class") {
    ProtocolSpec spec = parse_protocol(ts::fixture("unknownmethod.obp"), "unknownmethod.obp");
    Program program = parse_source(ts::fixture("car_ok.mo"), "car_ok.mo");
    auto findings = validate(spec, lookup_class(program, "Car"));
    REQUIRE(findings.size() == 1);
    CHECK(findings[0].kind == SpecErrorKind::UnknownMethod);
    CHECK(findings[0].message.find("fly") != std::string::npos);
    CHECK(validate(spec).empty());  // without a class decl there is nothing to check
}

TEST_CASE("isolated states are unreachable warnings") {
    ProtocolSpec spec = parse_protocol(
        "protocol P for C { initial state A; state B; state Parked; A -> B on go; }", "p.obp");
    auto findings = validate(spec);
    REQUIRE(findings.size() == 1);
    CHECK(findings[0].kind == SpecErrorKind::UnreachableState);
    CHECK(findings[0].severity == Severity::Warning);
    CHECK(findings[0].message.find("Parked") != std::string::npos);
}

TEST_CASE("findings come back sorted by source position") {
    ProtocolSpec spec = parse_protocol(
        "protocol P for C {\n"
        "  initial state A;\n"
        "  state B;\n"
        "  state Lost;\n"
        "  A -> B on go;\n"
        "  A -> A on go;\n"
        "}",
        "p.obp");
    auto findings = validate(spec);
    REQUIRE(findings.size() == 2);
    CHECK(findings[0].kind == SpecErrorKind::UnreachableState);
    CHECK(findings[1].kind == SpecErrorKind::NondeterministicTransition);
    CHECK(findings[0].span.line < findings[1].span.line);
}
