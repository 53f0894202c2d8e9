#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace obcheck {

enum class Command { Check, Extract, Transform, Validate };
enum class OutputFormat { Text, Json };

struct Invocation {
    Command command = Command::Check;
    std::optional<std::string> source_path;
    std::vector<std::string> spec_paths;
    std::optional<std::string> object_filter;
    OutputFormat format = OutputFormat::Text;
};

inline constexpr int kExitClean = 0;       // no error-severity findings
inline constexpr int kExitViolations = 1;  // behavior violations or spec validation errors
inline constexpr int kExitUsage = 2;       // usage error, unreadable file, lex/parse error

// Parses argv (without the program name) and runs the requested command.
// Reports go to `out`; diagnostics and logs go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

int execute(const Invocation& invocation, std::ostream& out, std::ostream& err);

}  // namespace obcheck
