#include "obcheck/parser.hpp"

#include <set>
#include <utility>

#include "obcheck/lexer.hpp"

namespace obcheck {

namespace {

class MiniObjParser {
public:
    MiniObjParser(const std::vector<Token>& tokens, std::string file)
        : toks_(tokens), file_(std::move(file)) {}

    Program parse() {
        Program program;
        program.source_file = file_;
        std::set<std::string> class_names;
        while (peek_keyword("class")) {
            ClassDecl cls = parse_class();
            if (!class_names.insert(cls.name).second)
                throw ParseError("duplicate class '" + cls.name + "'", cls.span);
            program.classes.push_back(std::move(cls));
        }
        if (!(check(TokenKind::Ident) && current().text == "main"))
            throw ParseError("expected 'main' block", current_span());
        ++pos_;
        program.main_block = parse_block();
        if (!at_end()) throw ParseError("expected end of input", current_span());
        return program;
    }

private:
    bool at_end() const { return pos_ >= toks_.size(); }

    const Token& current() const { return toks_[pos_]; }

    Span current_span() const {
        if (!at_end()) return current().span;
        if (toks_.empty()) return Span{file_, 1, 1, 0};
        const Span& last = toks_.back().span;
        return Span{file_, last.line, last.column + last.length, 0};
    }

    bool check(TokenKind kind, std::size_t ahead = 0) const {
        return pos_ + ahead < toks_.size() && toks_[pos_ + ahead].kind == kind;
    }

    bool peek_keyword(std::string_view word) const {
        return !at_end() && current().is_keyword(word);
    }

    bool match_keyword(std::string_view word) {
        if (!peek_keyword(word)) return false;
        ++pos_;
        return true;
    }

    Token expect(TokenKind kind, const char* what) {
        if (!check(kind)) throw ParseError(std::string("expected ") + what, current_span());
        return toks_[pos_++];
    }

    ClassDecl parse_class() {
        ++pos_;  // 'class'
        Token name = expect(TokenKind::Ident, "class name");
        expect(TokenKind::LBrace, "'{'");
        ClassDecl cls;
        cls.name = name.text;
        cls.span = name.span;
        while (!check(TokenKind::RBrace)) {
            if (at_end()) throw ParseError("unterminated block", current_span());
            MethodSig sig = parse_method();
            if (cls.find_method(sig.name) != nullptr)
                throw ParseError(
                    "duplicate method '" + sig.name + "' in class '" + cls.name + "'", sig.span);
            cls.methods.push_back(std::move(sig));
        }
        ++pos_;  // '}'
        return cls;
    }

    MethodSig parse_method() {
        Token return_type = expect(TokenKind::Ident, "return type");
        Token name = expect(TokenKind::Ident, "method name");
        expect(TokenKind::LParen, "'('");
        int arity = 0;
        if (!check(TokenKind::RParen)) {
            for (;;) {
                expect(TokenKind::Ident, "parameter type");
                expect(TokenKind::Ident, "parameter name");
                ++arity;
                if (!check(TokenKind::Comma)) break;
                ++pos_;
            }
        }
        expect(TokenKind::RParen, "')'");
        expect(TokenKind::LBrace, "'{'");
        skip_body();
        return MethodSig{name.text, arity, return_type.text, name.span};
    }

    // Bodies are brace-matched and dropped; only the signature is kept.
    void skip_body() {
        int depth = 1;
        while (depth > 0) {
            if (at_end()) throw ParseError("unterminated block", current_span());
            TokenKind kind = current().kind;
            ++pos_;
            if (kind == TokenKind::LBrace) ++depth;
            else if (kind == TokenKind::RBrace) --depth;
        }
    }

    std::vector<Stmt> parse_block() {
        expect(TokenKind::LBrace, "'{'");
        std::vector<Stmt> stmts;
        while (!check(TokenKind::RBrace)) {
            if (at_end()) throw ParseError("unterminated block", current_span());
            stmts.push_back(parse_stmt());
        }
        ++pos_;  // '}'
        return stmts;
    }

    Stmt parse_stmt() {
        if (peek_keyword("if")) return parse_if();
        if (peek_keyword("while")) return parse_while();
        if (check(TokenKind::Ident)) {
            if (check(TokenKind::Dot, 1)) return parse_call();
            if (check(TokenKind::Ident, 1)) return parse_var_decl();
        }
        throw ParseError("expected statement", current_span());
    }

    Stmt parse_if() {
        Span span = current().span;
        ++pos_;  // 'if'
        expect(TokenKind::LParen, "'('");
        Token cond = expect(TokenKind::CondText, "condition");
        expect(TokenKind::RParen, "')'");
        IfStmt node;
        node.condition = cond.text;
        node.span = span;
        node.then_block = parse_block();
        if (match_keyword("else")) node.else_block = parse_block();
        return Stmt{std::move(node)};
    }

    Stmt parse_while() {
        Span span = current().span;
        ++pos_;  // 'while'
        expect(TokenKind::LParen, "'('");
        Token cond = expect(TokenKind::CondText, "condition");
        expect(TokenKind::RParen, "')'");
        WhileStmt node;
        node.condition = cond.text;
        node.span = span;
        node.body = parse_block();
        return Stmt{std::move(node)};
    }

    Stmt parse_call() {
        Token receiver = toks_[pos_++];
        ++pos_;  // '.'
        Token method = expect(TokenKind::Ident, "method name");
        int args = parse_arg_list();
        expect(TokenKind::Semicolon, "';'");
        return Stmt{MethodCall{receiver.text, method.text, args, method.span}};
    }

    Stmt parse_var_decl() {
        Token type = toks_[pos_++];
        Token name = toks_[pos_++];
        expect(TokenKind::Assign, "'='");
        if (!match_keyword("new")) throw ParseError("expected 'new'", current_span());
        Token ctor = expect(TokenKind::Ident, "class name");
        if (ctor.text != type.text)
            throw ParseError("constructor class '" + ctor.text +
                                 "' does not match declared type '" + type.text + "'",
                             ctor.span);
        int args = parse_arg_list();
        expect(TokenKind::Semicolon, "';'");
        return Stmt{VarDecl{type.text, name.text, args, name.span}};
    }

    int parse_arg_list() {
        expect(TokenKind::LParen, "'('");
        int count = 0;
        if (!check(TokenKind::RParen)) {
            for (;;) {
                if (!(check(TokenKind::Int) || check(TokenKind::String) ||
                      check(TokenKind::Ident)))
                    throw ParseError("expected argument", current_span());
                ++pos_;
                ++count;
                if (!check(TokenKind::Comma)) break;
                ++pos_;
            }
        }
        expect(TokenKind::RParen, "')'");
        return count;
    }

    const std::vector<Token>& toks_;
    std::string file_;
    std::size_t pos_ = 0;
};

}  // namespace

Program parse_program(const std::vector<Token>& tokens, std::string source_file) {
    return MiniObjParser(tokens, std::move(source_file)).parse();
}

Program parse_source(std::string_view source, std::string file) {
    std::vector<Token> tokens = tokenize(source, file, miniobj_lexing());
    return parse_program(tokens, std::move(file));
}

}  // namespace obcheck
