#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "obcheck/ast.hpp"
#include "obcheck/token.hpp"

namespace obcheck {

// Parses a MiniObj token sequence. Throws ParseError at the offending token.
Program parse_program(const std::vector<Token>& tokens, std::string source_file);

// tokenize + parse_program in one step.
Program parse_source(std::string_view source, std::string file);

}  // namespace obcheck
