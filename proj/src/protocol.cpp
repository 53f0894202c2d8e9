#include "obcheck/protocol.hpp"

#include <algorithm>
#include <map>
#include <utility>

#include "obcheck/lexer.hpp"

namespace obcheck {

const char* spec_error_kind_name(SpecErrorKind kind) {
    switch (kind) {
        case SpecErrorKind::NoInitialState: return "NoInitialState";
        case SpecErrorKind::MultipleInitialStates: return "MultipleInitialStates";
        case SpecErrorKind::UnknownStateReference: return "UnknownStateReference";
        case SpecErrorKind::DuplicateStateName: return "DuplicateStateName";
        case SpecErrorKind::NondeterministicTransition: return "NondeterministicTransition";
        case SpecErrorKind::UnknownMethod: return "UnknownMethod";
        case SpecErrorKind::UnreachableState: return "UnreachableState";
        case SpecErrorKind::DuplicateProtocol: return "DuplicateProtocol";
    }
    return "SpecError";
}

const State* ProtocolSpec::find_state(std::string_view name) const {
    auto it = std::find_if(states.begin(), states.end(),
                           [&](const State& s) { return s.name == name; });
    return it == states.end() ? nullptr : &*it;
}

int ProtocolSpec::initial_state() const {
    for (const State& s : states)
        if (s.is_initial) return s.id;
    return -1;
}

std::set<std::string> ProtocolSpec::method_alphabet() const {
    std::set<std::string> methods;
    for (const Transition& t : transitions) methods.insert(t.method);
    return methods;
}

namespace {

struct RawTransition {
    std::string from;
    std::string to;
    std::string method;
    std::optional<std::string> guard_label;
    std::optional<std::string> action_label;
    Span from_span;
    Span to_span;
};

class ProtocolParser {
public:
    ProtocolParser(const std::vector<Token>& tokens, std::string file)
        : toks_(tokens), file_(std::move(file)) {}

    ProtocolSpec parse() {
        ProtocolSpec spec;
        spec.source_file = file_;
        expect_keyword("protocol");
        Token proto_name = expect(TokenKind::Ident, "protocol name");
        spec.protocol_name = proto_name.text;
        expect_keyword("for");
        spec.class_name = expect(TokenKind::Ident, "class name").text;
        expect(TokenKind::LBrace, "'{'");

        std::vector<RawTransition> raw;
        int initial_count = 0;
        while (!check(TokenKind::RBrace)) {
            if (at_end()) throw ParseError("unterminated block", current_span());
            if (check(TokenKind::Keyword)) {
                parse_state_decl(spec, initial_count);
            } else if (check(TokenKind::Ident)) {
                raw.push_back(parse_transition());
            } else {
                throw ParseError("expected state or transition declaration", current_span());
            }
        }
        ++pos_;  // '}'
        if (!at_end()) throw ParseError("expected end of input", current_span());

        if (initial_count == 0)
            throw ProtocolStructureError(SpecError{
                SpecErrorKind::NoInitialState, Severity::Error,
                "protocol '" + spec.protocol_name + "' declares no initial state",
                proto_name.span});

        for (const RawTransition& rt : raw) {
            const State* from = spec.find_state(rt.from);
            if (from == nullptr) unknown_state(rt.from, rt.from_span);
            const State* to = spec.find_state(rt.to);
            if (to == nullptr) unknown_state(rt.to, rt.to_span);
            spec.transitions.push_back(Transition{from->id, to->id, rt.method, rt.guard_label,
                                                  rt.action_label, rt.from_span});
        }
        return spec;
    }

private:
    [[noreturn]] static void unknown_state(const std::string& name, const Span& span) {
        throw ProtocolStructureError(SpecError{SpecErrorKind::UnknownStateReference,
                                               Severity::Error,
                                               "unknown state '" + name + "'", span});
    }

    void parse_state_decl(ProtocolSpec& spec, int& initial_count) {
        bool is_initial = match_keyword("initial");
        bool is_final = match_keyword("final");
        if (!match_keyword("state"))
            throw ParseError("expected 'state'", current_span());
        Token name = expect(TokenKind::Ident, "state name");
        expect(TokenKind::Semicolon, "';'");
        if (spec.find_state(name.text) != nullptr)
            throw ProtocolStructureError(SpecError{SpecErrorKind::DuplicateStateName,
                                                   Severity::Error,
                                                   "duplicate state '" + name.text + "'",
                                                   name.span});
        if (is_initial && ++initial_count > 1)
            throw ProtocolStructureError(SpecError{
                SpecErrorKind::MultipleInitialStates, Severity::Error,
                "state '" + name.text + "' is a second initial state", name.span});
        int id = static_cast<int>(spec.states.size());
        spec.states.push_back(State{id, name.text, is_initial, is_final, name.span});
    }

    RawTransition parse_transition() {
        RawTransition rt;
        Token from = toks_[pos_++];
        rt.from = from.text;
        rt.from_span = from.span;
        expect(TokenKind::Arrow, "'->'");
        Token to = expect(TokenKind::Ident, "state name");
        rt.to = to.text;
        rt.to_span = to.span;
        if (!match_keyword("on")) throw ParseError("expected 'on'", current_span());
        rt.method = expect(TokenKind::Ident, "method name").text;
        if (match_keyword("when")) rt.guard_label = expect(TokenKind::String, "guard label").text;
        if (match_keyword("do")) rt.action_label = expect(TokenKind::String, "action label").text;
        expect(TokenKind::Semicolon, "';'");
        return rt;
    }

    bool at_end() const { return pos_ >= toks_.size(); }

    Span current_span() const {
        if (!at_end()) return toks_[pos_].span;
        if (toks_.empty()) return Span{file_, 1, 1, 0};
        const Span& last = toks_.back().span;
        return Span{file_, last.line, last.column + last.length, 0};
    }

    bool check(TokenKind kind) const { return !at_end() && toks_[pos_].kind == kind; }

    bool match_keyword(std::string_view word) {
        if (at_end() || !toks_[pos_].is_keyword(word)) return false;
        ++pos_;
        return true;
    }

    void expect_keyword(std::string_view word) {
        if (!match_keyword(word))
            throw ParseError("expected '" + std::string(word) + "'", current_span());
    }

    Token expect(TokenKind kind, const char* what) {
        if (!check(kind)) throw ParseError(std::string("expected ") + what, current_span());
        return toks_[pos_++];
    }

    const std::vector<Token>& toks_;
    std::string file_;
    std::size_t pos_ = 0;
};

}  // namespace

ProtocolSpec parse_protocol(std::string_view text, std::string file) {
    std::vector<Token> tokens = tokenize(text, file, protocol_lexing());
    return ProtocolParser(tokens, std::move(file)).parse();
}

std::vector<SpecError> validate(const ProtocolSpec& spec, const ClassDecl* class_decl) {
    std::vector<SpecError> findings;

    std::set<std::pair<int, std::string>> seen;
    for (const Transition& t : spec.transitions) {
        if (!seen.emplace(t.from, t.method).second)
            findings.push_back(SpecError{
                SpecErrorKind::NondeterministicTransition, Severity::Error,
                "state '" + spec.states[static_cast<std::size_t>(t.from)].name +
                    "' has more than one transition on method '" + t.method + "'",
                t.span});
        if (class_decl != nullptr && class_decl->find_method(t.method) == nullptr)
            findings.push_back(SpecError{
                SpecErrorKind::UnknownMethod, Severity::Error,
                "method '" + t.method + "' is not declared by class '" + class_decl->name + "'",
                t.span});
    }

    // Reachability from the initial state, following transitions forward.
    std::vector<bool> reached(spec.states.size(), false);
    std::vector<int> work;
    if (int init = spec.initial_state(); init >= 0) {
        reached[static_cast<std::size_t>(init)] = true;
        work.push_back(init);
    }
    while (!work.empty()) {
        int current = work.back();
        work.pop_back();
        for (const Transition& t : spec.transitions) {
            if (t.from == current && !reached[static_cast<std::size_t>(t.to)]) {
                reached[static_cast<std::size_t>(t.to)] = true;
                work.push_back(t.to);
            }
        }
    }
    for (const State& s : spec.states) {
        if (!reached[static_cast<std::size_t>(s.id)])
            findings.push_back(SpecError{SpecErrorKind::UnreachableState, Severity::Warning,
                                         "state '" + s.name +
                                             "' is unreachable from the initial state",
                                         s.span});
    }

    std::stable_sort(findings.begin(), findings.end(),
                     [](const SpecError& a, const SpecError& b) {
                         return span_before(a.span, b.span);
                     });
    return findings;
}

}  // namespace obcheck
