#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "obcheck/diagnostics.hpp"

namespace obcheck {

struct MethodSig {
    std::string name;
    int arity = 0;
    std::string return_type;
    Span span;
};

struct ClassDecl {
    std::string name;
    std::vector<MethodSig> methods;  // unique names, declaration order
    Span span;

    const MethodSig* find_method(std::string_view method_name) const;
};

struct VarDecl {
    std::string class_name;
    std::string var_name;
    int ctor_arg_count = 0;
    Span span;
};

struct MethodCall {
    std::string receiver;
    std::string method;
    int arg_count = 0;
    Span span;  // points at the method name
};

struct Stmt;

// Conditions are opaque text, stored verbatim and never evaluated.
struct IfStmt {
    std::string condition;
    std::vector<Stmt> then_block;
    std::optional<std::vector<Stmt>> else_block;
    Span span;
};

struct WhileStmt {
    std::string condition;
    std::vector<Stmt> body;
    Span span;
};

struct Stmt {
    std::variant<VarDecl, MethodCall, IfStmt, WhileStmt> node;

    const Span& span() const;
};

struct Program {
    std::vector<ClassDecl> classes;
    std::vector<Stmt> main_block;
    std::string source_file;
};

// Canonical source text; parsing it again yields a structurally identical
// Program (spans aside). Method bodies and argument values are not retained
// by the AST, so placeholders are printed for them.
std::string to_source(const Program& program);

}  // namespace obcheck
