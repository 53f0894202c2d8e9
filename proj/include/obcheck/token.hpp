#pragma once

#include <string>
#include <string_view>

#include "obcheck/diagnostics.hpp"

namespace obcheck {

enum class TokenKind {
    Keyword,
    Ident,
    Int,
    String,
    CondText,  // raw text between the parentheses of if/while
    LBrace,
    RBrace,
    LParen,
    RParen,
    Semicolon,
    Comma,
    Dot,
    Assign,
    Arrow,
};

const char* token_kind_name(TokenKind kind);

struct Token {
    TokenKind kind;
    std::string text;  // lexeme; decoded value for String, verbatim text for CondText
    Span span;

    bool is_keyword(std::string_view word) const {
        return kind == TokenKind::Keyword && text == word;
    }
};

}  // namespace obcheck
