#pragma once

#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "obcheck/ast.hpp"

namespace obcheck {

struct State {
    int id = 0;  // dense, declaration order
    std::string name;
    bool is_initial = false;
    bool is_final = false;
    Span span;
};

struct Transition {
    int from = 0;
    int to = 0;
    std::string method;
    std::optional<std::string> guard_label;   // opaque, never evaluated
    std::optional<std::string> action_label;  // opaque, never evaluated
    Span span;
};

struct ProtocolSpec {
    std::string protocol_name;
    std::string class_name;  // the class this protocol governs
    std::vector<State> states;
    std::vector<Transition> transitions;
    std::string source_file;

    const State* find_state(std::string_view name) const;
    int initial_state() const;  // exactly one exists after parsing
    std::set<std::string> method_alphabet() const;
};

enum class SpecErrorKind {
    NoInitialState,
    MultipleInitialStates,
    UnknownStateReference,
    DuplicateStateName,
    NondeterministicTransition,
    UnknownMethod,
    UnreachableState,
    DuplicateProtocol,
};

const char* spec_error_kind_name(SpecErrorKind kind);

struct SpecError {
    SpecErrorKind kind;
    Severity severity;
    std::string message;
    Span span;
};

// Structural problem that keeps the protocol text from resolving into a
// ProtocolSpec at all (as opposed to findings returned by validate()).
class ProtocolStructureError : public std::runtime_error {
public:
    explicit ProtocolStructureError(SpecError error)
        : std::runtime_error(error.message), error_(std::move(error)) {}

    const SpecError& error() const noexcept { return error_; }

private:
    SpecError error_;
};

// Parses the protocol DSL. Throws ParseError/LexError on syntax problems,
// ProtocolStructureError on NoInitialState, MultipleInitialStates,
// UnknownStateReference, or DuplicateStateName.
ProtocolSpec parse_protocol(std::string_view text, std::string file);

// Semantic findings: NondeterministicTransition and, when a class declaration
// is supplied, UnknownMethod (both errors), plus UnreachableState warnings.
// Sorted by source position.
std::vector<SpecError> validate(const ProtocolSpec& spec,
                                const ClassDecl* class_decl = nullptr);

}  // namespace obcheck
