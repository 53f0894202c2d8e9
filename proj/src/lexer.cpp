#include "obcheck/lexer.hpp"

#include <cctype>
#include <cstdint>
#include <set>
#include <sstream>

namespace obcheck {

const char* token_kind_name(TokenKind kind) {
    switch (kind) {
        case TokenKind::Keyword: return "keyword";
        case TokenKind::Ident: return "identifier";
        case TokenKind::Int: return "integer literal";
        case TokenKind::String: return "string literal";
        case TokenKind::CondText: return "condition";
        case TokenKind::LBrace: return "'{'";
        case TokenKind::RBrace: return "'}'";
        case TokenKind::LParen: return "'('";
        case TokenKind::RParen: return "')'";
        case TokenKind::Semicolon: return "';'";
        case TokenKind::Comma: return "','";
        case TokenKind::Dot: return "'.'";
        case TokenKind::Assign: return "'='";
        case TokenKind::Arrow: return "'->'";
    }
    return "token";
}

const LexOptions& miniobj_lexing() {
    static const LexOptions options{
        {"class", "new", "if", "else", "while"}, false, true};
    return options;
}

const LexOptions& protocol_lexing() {
    static const LexOptions options{
        {"protocol", "for", "initial", "final", "state", "on", "when", "do"}, true, false};
    return options;
}

namespace {

bool is_ident_start(uint32_t cp) {
    return cp == '_' || (cp < 128 && std::isalpha(static_cast<int>(cp)));
}

bool is_ident_part(uint32_t cp) {
    return cp == '_' || (cp < 128 && std::isalnum(static_cast<int>(cp)));
}

std::string describe_char(uint32_t cp) {
    if (cp >= 0x20 && cp < 0x7f) return std::string("'") + static_cast<char>(cp) + "'";
    std::ostringstream os;
    os << "U+" << std::hex << std::uppercase << cp;
    return os.str();
}

class Lexer {
public:
    Lexer(std::string_view source, std::string file, const LexOptions& options)
        : src_(source),
          file_(std::move(file)),
          options_(options),
          keywords_(options.keywords.begin(), options.keywords.end()) {}

    std::vector<Token> run() {
        std::vector<Token> tokens;
        bool pending_condition = false;
        for (;;) {
            skip_trivia();
            if (at_end()) break;
            Token token = next_token();
            bool was_pending = pending_condition;
            pending_condition = options_.capture_conditions &&
                                (token.is_keyword("if") || token.is_keyword("while"));
            TokenKind kind = token.kind;
            tokens.push_back(std::move(token));
            if (was_pending && kind == TokenKind::LParen) {
                tokens.push_back(capture_condition());
            }
        }
        return tokens;
    }

private:
    bool at_end() const { return offset_ >= src_.size(); }

    [[noreturn]] void fail(const std::string& message, int line, int column) const {
        throw LexError(message, Span{file_, line, column, 1});
    }

    uint32_t decode(std::size_t pos, int& width) const {
        const auto* bytes = reinterpret_cast<const unsigned char*>(src_.data());
        const unsigned char b0 = bytes[pos];
        auto cont = [&](std::size_t i) {
            return pos + i < src_.size() && (bytes[pos + i] & 0xC0) == 0x80;
        };
        if (b0 < 0x80) {
            width = 1;
            return b0;
        }
        if ((b0 & 0xE0) == 0xC0) {
            if (!cont(1)) fail("invalid UTF-8 sequence", line_, column_);
            uint32_t cp = (uint32_t(b0 & 0x1F) << 6) | uint32_t(bytes[pos + 1] & 0x3F);
            if (cp < 0x80) fail("invalid UTF-8 sequence", line_, column_);
            width = 2;
            return cp;
        }
        if ((b0 & 0xF0) == 0xE0) {
            if (!cont(1) || !cont(2)) fail("invalid UTF-8 sequence", line_, column_);
            uint32_t cp = (uint32_t(b0 & 0x0F) << 12) | (uint32_t(bytes[pos + 1] & 0x3F) << 6) |
                          uint32_t(bytes[pos + 2] & 0x3F);
            if (cp < 0x800 || (cp >= 0xD800 && cp <= 0xDFFF))
                fail("invalid UTF-8 sequence", line_, column_);
            width = 3;
            return cp;
        }
        if ((b0 & 0xF8) == 0xF0) {
            if (!cont(1) || !cont(2) || !cont(3)) fail("invalid UTF-8 sequence", line_, column_);
            uint32_t cp = (uint32_t(b0 & 0x07) << 18) | (uint32_t(bytes[pos + 1] & 0x3F) << 12) |
                          (uint32_t(bytes[pos + 2] & 0x3F) << 6) | uint32_t(bytes[pos + 3] & 0x3F);
            if (cp < 0x10000 || cp > 0x10FFFF) fail("invalid UTF-8 sequence", line_, column_);
            width = 4;
            return cp;
        }
        fail("invalid UTF-8 sequence", line_, column_);
    }

    uint32_t peek() const {
        int width = 0;
        return decode(offset_, width);
    }

    uint32_t advance() {
        int width = 0;
        uint32_t cp = decode(offset_, width);
        offset_ += static_cast<std::size_t>(width);
        if (cp == '\n') {
            ++line_;
            column_ = 1;
        } else {
            ++column_;
        }
        return cp;
    }

    void skip_trivia() {
        for (;;) {
            if (at_end()) return;
            uint32_t cp = peek();
            if (cp == ' ' || cp == '\t' || cp == '\r' || cp == '\n') {
                advance();
                continue;
            }
            if (cp == '/' && offset_ + 1 < src_.size() && src_[offset_ + 1] == '/') {
                while (!at_end() && peek() != '\n') advance();
                continue;
            }
            return;
        }
    }

    Token next_token() {
        const int line = line_;
        const int column = column_;
        uint32_t cp = peek();

        if (is_ident_start(cp)) {
            std::string word;
            int chars = 0;
            while (!at_end() && is_ident_part(peek())) {
                word += static_cast<char>(advance());
                ++chars;
            }
            TokenKind kind =
                keywords_.count(word) != 0 ? TokenKind::Keyword : TokenKind::Ident;
            return Token{kind, std::move(word), Span{file_, line, column, chars}};
        }

        if (cp >= '0' && cp <= '9') {
            std::string digits;
            int chars = 0;
            while (!at_end() && peek() >= '0' && peek() <= '9') {
                digits += static_cast<char>(advance());
                ++chars;
            }
            return Token{TokenKind::Int, std::move(digits), Span{file_, line, column, chars}};
        }

        if (cp == '"') return lex_string(line, column);

        switch (cp) {
            case '{': return punct(TokenKind::LBrace, "{", line, column);
            case '}': return punct(TokenKind::RBrace, "}", line, column);
            case '(': return punct(TokenKind::LParen, "(", line, column);
            case ')': return punct(TokenKind::RParen, ")", line, column);
            case ';': return punct(TokenKind::Semicolon, ";", line, column);
            case ',': return punct(TokenKind::Comma, ",", line, column);
            case '.': return punct(TokenKind::Dot, ".", line, column);
            case '=': return punct(TokenKind::Assign, "=", line, column);
            default: break;
        }

        if (cp == '-' && options_.arrow_token) {
            advance();
            if (at_end() || peek() != '>') fail("illegal character '-'", line, column);
            advance();
            return Token{TokenKind::Arrow, "->", Span{file_, line, column, 2}};
        }

        fail("illegal character " + describe_char(cp), line, column);
    }

    Token punct(TokenKind kind, const char* text, int line, int column) {
        advance();
        return Token{kind, text, Span{file_, line, column, 1}};
    }

    Token lex_string(int line, int column) {
        advance();  // opening quote
        std::string value;
        int chars = 1;
        for (;;) {
            if (at_end() || peek() == '\n')
                throw LexError("unterminated string literal", Span{file_, line, column, chars});
            std::size_t before = offset_;
            uint32_t cp = advance();
            ++chars;
            if (cp == '"') break;
            if (cp == '\\') {
                if (at_end() || peek() == '\n')
                    throw LexError("unterminated string literal",
                                   Span{file_, line, column, chars});
                std::size_t esc_start = offset_;
                uint32_t esc = advance();
                ++chars;
                switch (esc) {
                    case '"': value += '"'; break;
                    case '\\': value += '\\'; break;
                    case 'n': value += '\n'; break;
                    case 't': value += '\t'; break;
                    default: value.append(src_.substr(esc_start, offset_ - esc_start)); break;
                }
            } else {
                value.append(src_.substr(before, offset_ - before));
            }
        }
        return Token{TokenKind::String, std::move(value), Span{file_, line, column, chars}};
    }

    // Raw capture of everything between the parentheses of if/while.
    // Parentheses nest; quoted sections do not count toward nesting.
    Token capture_condition() {
        const int line = line_;
        const int column = column_;
        std::string text;
        int chars = 0;
        int depth = 1;
        bool in_string = false;
        for (;;) {
            if (at_end())
                throw LexError("unterminated condition", Span{file_, line, column, chars});
            uint32_t cp = peek();
            if (!in_string && cp == ')' && depth == 1) break;  // closing paren stays
            std::size_t before = offset_;
            advance();
            ++chars;
            if (in_string) {
                if (cp == '\\' && !at_end()) {
                    advance();
                    ++chars;
                } else if (cp == '"') {
                    in_string = false;
                }
            } else {
                if (cp == '(') ++depth;
                else if (cp == ')') --depth;
                else if (cp == '"') in_string = true;
            }
            text.append(src_.substr(before, offset_ - before));
        }
        return Token{TokenKind::CondText, std::move(text), Span{file_, line, column, chars}};
    }

    std::string_view src_;
    std::string file_;
    const LexOptions& options_;
    std::set<std::string, std::less<>> keywords_;
    std::size_t offset_ = 0;
    int line_ = 1;
    int column_ = 1;
};

}  // namespace

std::vector<Token> tokenize(std::string_view source, std::string file,
                            const LexOptions& options) {
    return Lexer(source, std::move(file), options).run();
}

}  // namespace obcheck
