#include "obcheck/cli.hpp"

#include <fstream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"

#include "obcheck/parser.hpp"
#include "obcheck/protocol.hpp"
#include "obcheck/report.hpp"
#include "obcheck/spec_table.hpp"
#include "obcheck/trace.hpp"
#include "obcheck/usage.hpp"

namespace obcheck {

namespace {

std::optional<std::string> read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) return std::nullopt;
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

void print_diagnostic(std::ostream& err, const Diagnostic& diag) {
    err << to_string(diag.span) << " error: " << diag.message << '\n';
}

void print_findings(std::ostream& os, const std::vector<SpecError>& findings) {
    for (const SpecError& finding : findings)
        os << finding.span.file << ':' << finding.span.line << ':' << finding.span.column << ' '
           << severity_name(finding.severity) << " ["
           << spec_error_kind_name(finding.kind) << "] " << finding.message << '\n';
}

bool has_errors(const std::vector<SpecError>& findings) {
    for (const SpecError& finding : findings)
        if (finding.severity == Severity::Error) return true;
    return false;
}

// Parses every protocol file. Structural problems are collected as findings;
// IO and syntax failures end the run with kExitUsage via the returned code.
struct LoadResult {
    std::vector<ProtocolSpec> specs;
    std::vector<SpecError> structural;
    int failure_code = 0;
};

LoadResult load_protocols(const std::vector<std::string>& paths, std::ostream& err) {
    LoadResult result;
    for (const std::string& path : paths) {
        auto text = read_file(path);
        if (!text) {
            err << "error: cannot read file '" << path << "'\n";
            result.failure_code = kExitUsage;
            return result;
        }
        try {
            result.specs.push_back(parse_protocol(*text, path));
        } catch (const ProtocolStructureError& e) {
            result.structural.push_back(e.error());
        } catch (const CompileError& e) {
            print_diagnostic(err, e.diagnostic());
            result.failure_code = kExitUsage;
            return result;
        }
    }
    return result;
}

std::vector<SpecError> duplicate_protocol_errors(const std::vector<ProtocolSpec>& specs) {
    std::vector<SpecError> errors;
    std::map<std::string, const ProtocolSpec*> by_class;
    for (const ProtocolSpec& spec : specs) {
        auto [it, inserted] = by_class.emplace(spec.class_name, &spec);
        if (!inserted)
            errors.push_back(SpecError{
                SpecErrorKind::DuplicateProtocol, Severity::Error,
                "class '" + spec.class_name + "' is governed by more than one protocol ('" +
                    it->second->protocol_name + "' and '" + spec.protocol_name + "')",
                Span{spec.source_file, 1, 1, 0}});
    }
    return errors;
}

int execute_check(const Invocation& inv, std::ostream& out, std::ostream& err) {
    auto source = read_file(*inv.source_path);
    if (!source) {
        err << "error: cannot read file '" << *inv.source_path << "'\n";
        return kExitUsage;
    }
    Program program;
    try {
        program = parse_source(*source, *inv.source_path);
    } catch (const CompileError& e) {
        print_diagnostic(err, e.diagnostic());
        return kExitUsage;
    }

    LoadResult loaded = load_protocols(inv.spec_paths, err);
    if (loaded.failure_code != 0) return loaded.failure_code;

    std::vector<SpecError> errors = std::move(loaded.structural);
    for (SpecError& e : duplicate_protocol_errors(loaded.specs)) errors.push_back(std::move(e));
    std::vector<SpecError> warnings;
    for (const ProtocolSpec& spec : loaded.specs) {
        for (SpecError& finding : validate(spec, lookup_class(program, spec.class_name))) {
            if (finding.severity == Severity::Error)
                errors.push_back(std::move(finding));
            else
                warnings.push_back(std::move(finding));
        }
    }
    print_findings(err, warnings);
    if (!errors.empty()) {
        print_findings(err, errors);
        return kExitViolations;
    }

    SpecTableMap tables;
    for (const ProtocolSpec& spec : loaded.specs)
        tables.emplace(spec.class_name, to_specification_table(spec));

    UsageSet usages;
    try {
        usages = extract_usages(program);
    } catch (const CompileError& e) {
        print_diagnostic(err, e.diagnostic());
        return kExitUsage;
    }

    ClassMethodMap class_methods = class_methods_of(program);
    TraceReport report = inv.object_filter
                             ? trace_one(usages, *inv.object_filter, tables, class_methods)
                             : trace_all(usages, tables, class_methods);
    out << (inv.format == OutputFormat::Json ? render_json(report) : render_text(report));
    return report.clean() ? kExitClean : kExitViolations;
}

int execute_extract(const Invocation& inv, std::ostream& out, std::ostream& err) {
    auto source = read_file(*inv.source_path);
    if (!source) {
        err << "error: cannot read file '" << *inv.source_path << "'\n";
        return kExitUsage;
    }
    try {
        Program program = parse_source(*source, *inv.source_path);
        UsageSet usages = extract_usages(program);
        out << (inv.format == OutputFormat::Json ? render_usages_json(usages)
                                                 : render_usages_text(usages));
    } catch (const CompileError& e) {
        print_diagnostic(err, e.diagnostic());
        return kExitUsage;
    }
    return kExitClean;
}

int execute_transform(const Invocation& inv, std::ostream& out, std::ostream& err) {
    LoadResult loaded = load_protocols(inv.spec_paths, err);
    if (loaded.failure_code != 0) return loaded.failure_code;

    std::vector<SpecError> errors = std::move(loaded.structural);
    std::vector<SpecificationTable> tables;
    if (errors.empty()) {
        for (const ProtocolSpec& spec : loaded.specs) {
            try {
                tables.push_back(to_specification_table(spec));
            } catch (const InvalidSpecError& e) {
                for (const SpecError& finding : e.errors()) errors.push_back(finding);
            }
        }
    }
    if (!errors.empty()) {
        print_findings(err, errors);
        return kExitViolations;
    }

    if (inv.format == OutputFormat::Json) {
        out << render_tables_json(tables);
    } else {
        for (std::size_t i = 0; i < tables.size(); ++i) {
            if (i > 0) out << '\n';
            out << render_table(tables[i]);
        }
    }
    return kExitClean;
}

int execute_validate(const Invocation& inv, std::ostream& out, std::ostream& err) {
    std::optional<Program> program;
    if (inv.source_path) {
        auto source = read_file(*inv.source_path);
        if (!source) {
            err << "error: cannot read file '" << *inv.source_path << "'\n";
            return kExitUsage;
        }
        try {
            program = parse_source(*source, *inv.source_path);
        } catch (const CompileError& e) {
            print_diagnostic(err, e.diagnostic());
            return kExitUsage;
        }
    }

    LoadResult loaded = load_protocols(inv.spec_paths, err);
    if (loaded.failure_code != 0) return loaded.failure_code;

    std::vector<SpecError> findings = std::move(loaded.structural);
    for (SpecError& e : duplicate_protocol_errors(loaded.specs)) findings.push_back(std::move(e));
    for (const ProtocolSpec& spec : loaded.specs) {
        const ClassDecl* cls = program ? lookup_class(*program, spec.class_name) : nullptr;
        for (SpecError& finding : validate(spec, cls)) findings.push_back(std::move(finding));
    }

    out << (inv.format == OutputFormat::Json ? render_findings_json(findings)
                                             : render_findings_text(findings));
    return has_errors(findings) ? kExitViolations : kExitClean;
}

}  // namespace

int execute(const Invocation& inv, std::ostream& out, std::ostream& err) {
    switch (inv.command) {
        case Command::Check: return execute_check(inv, out, err);
        case Command::Extract: return execute_extract(inv, out, err);
        case Command::Transform: return execute_transform(inv, out, err);
        case Command::Validate: return execute_validate(inv, out, err);
    }
    return kExitUsage;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"obcheck - object behavior checker for MiniObj programs"};
    app.require_subcommand(1);

    std::string source;
    std::string validate_source;
    std::vector<std::string> specs;
    std::string object_name;
    std::string format = "text";

    auto add_format = [&](CLI::App* cmd) {
        cmd->add_option("--format", format, "output format")
            ->check(CLI::IsMember({"text", "json"}));
    };

    CLI::App* check = app.add_subcommand("check", "trace objects against their protocols");
    check->add_option("source", source, "MiniObj source file")->required();
    check->add_option("--spec", specs, "protocol file (repeatable)")->required()->allow_extra_args(false);
    check->add_option("--object", object_name, "trace only the named object");
    add_format(check);

    CLI::App* extract = app.add_subcommand("extract", "print per-object usage trees");
    extract->add_option("source", source, "MiniObj source file")->required();
    add_format(extract);

    CLI::App* transform =
        app.add_subcommand("transform", "print the specification table of a protocol");
    transform->add_option("--spec", specs, "protocol file (repeatable)")->required()->allow_extra_args(false);
    add_format(transform);

    CLI::App* validate = app.add_subcommand("validate", "check protocol files for defects");
    validate->add_option("--spec", specs, "protocol file (repeatable)")->required()->allow_extra_args(false);
    validate->add_option("source", validate_source,
                         "MiniObj source file to check method names against");
    add_format(validate);

    std::vector<std::string> argv_store;
    argv_store.reserve(args.size() + 1);
    argv_store.push_back("obcheck");
    argv_store.insert(argv_store.end(), args.begin(), args.end());
    std::vector<const char*> argv;
    argv.reserve(argv_store.size());
    for (const std::string& arg : argv_store) argv.push_back(arg.c_str());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitClean;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitClean;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    }

    Invocation inv;
    inv.spec_paths = specs;
    if (!object_name.empty()) inv.object_filter = object_name;
    inv.format = format == "json" ? OutputFormat::Json : OutputFormat::Text;
    if (check->parsed()) {
        inv.command = Command::Check;
        inv.source_path = source;
    } else if (extract->parsed()) {
        inv.command = Command::Extract;
        inv.source_path = source;
    } else if (transform->parsed()) {
        inv.command = Command::Transform;
    } else {
        inv.command = Command::Validate;
        if (!validate_source.empty()) inv.source_path = validate_source;
    }
    return execute(inv, out, err);
}

}  // namespace obcheck
