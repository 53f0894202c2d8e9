#include "obcheck/diagnostics.hpp"

#include <sstream>

namespace obcheck {

std::string to_string(const Span& span) {
    std::ostringstream os;
    os << span.file << ':' << span.line << ':' << span.column;
    return os.str();
}

bool span_before(const Span& a, const Span& b) {
    if (a.line != b.line) return a.line < b.line;
    return a.column < b.column;
}

const char* severity_name(Severity severity) {
    return severity == Severity::Error ? "error" : "warning";
}

}  // namespace obcheck
