#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "obcheck/token.hpp"

namespace obcheck {

struct LexOptions {
    std::vector<std::string> keywords;
    bool arrow_token = false;         // lex "->" instead of rejecting '-'
    bool capture_conditions = false;  // after if/while, capture "(...)" verbatim
};

// Token alphabet of MiniObj source files.
const LexOptions& miniobj_lexing();

// Token alphabet of protocol definition files.
const LexOptions& protocol_lexing();

// Splits source into tokens. Input must be valid UTF-8; comments (// ...)
// and whitespace are skipped. Throws LexError on an illegal character.
std::vector<Token> tokenize(std::string_view source, std::string file,
                            const LexOptions& options = miniobj_lexing());

}  // namespace obcheck
