#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace obcheck {

// 1-based source position. length is in characters, not bytes.
struct Span {
    std::string file;
    int line = 1;
    int column = 1;
    int length = 0;

    friend bool operator==(const Span&, const Span&) = default;
};

std::string to_string(const Span& span);

// (line, column) ordering; only meaningful for spans of the same file.
bool span_before(const Span& a, const Span& b);

enum class Severity { Error, Warning };

const char* severity_name(Severity severity);

struct Diagnostic {
    std::string message;
    Span span;
};

class CompileError : public std::runtime_error {
public:
    CompileError(const std::string& message, Span span)
        : std::runtime_error(message), span_(std::move(span)) {}

    const Span& span() const noexcept { return span_; }
    Diagnostic diagnostic() const { return Diagnostic{what(), span_}; }

private:
    Span span_;
};

class LexError : public CompileError {
public:
    using CompileError::CompileError;
};

class ParseError : public CompileError {
public:
    using CompileError::CompileError;
};

}  // namespace obcheck
