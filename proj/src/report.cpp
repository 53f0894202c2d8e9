#include "obcheck/report.hpp"

#include <algorithm>
#include <sstream>

#include "json.hpp"

namespace obcheck {

namespace {

using ordered_json = nlohmann::ordered_json;

std::string format_set(const std::vector<std::string>& names) {
    std::string out = "{";
    for (std::size_t i = 0; i < names.size(); ++i) {
        if (i > 0) out += ", ";
        out += names[i];
    }
    out += "}";
    return out;
}

std::string violation_message(const Violation& v) {
    switch (v.kind) {
        case ViolationKind::IllegalCall:
            return "method '" + v.method + "' not allowed in state(s) " +
                   format_set(v.state_names) + "; enabled: " + format_set(v.enabled_methods);
        case ViolationKind::DeadTrace:
            return "no legal continuation after method '" + v.method + "'; tracing stopped";
        case ViolationKind::UnknownMethod:
            return "method '" + v.method + "' is not defined by the protocol or the class";
        case ViolationKind::OrphanReceiver:
            return v.detail.empty() ? "call on an undeclared receiver" : v.detail;
        case ViolationKind::MissingProtocol:
            return v.detail.empty() ? "no protocol provided for class '" + v.class_name + "'"
                                    : v.detail;
        case ViolationKind::NotInFinalState:
            return "object ends in state(s) " + format_set(v.state_names) +
                   ", none of which is final";
    }
    return v.detail;
}

bool violation_ptr_less(const Violation* a, const Violation* b) {
    if (a->span.line != b->span.line) return a->span.line < b->span.line;
    if (a->span.column != b->span.column) return a->span.column < b->span.column;
    if (a->kind != b->kind) return static_cast<int>(a->kind) < static_cast<int>(b->kind);
    return a->method < b->method;
}

}  // namespace

std::string render_text(const TraceReport& report) {
    std::vector<const Violation*> all;
    for (const ObjectReport& obj : report.objects)
        for (const Violation& v : obj.violations) all.push_back(&v);
    std::stable_sort(all.begin(), all.end(), violation_ptr_less);

    std::ostringstream os;
    for (const Violation* v : all) {
        os << v->span.file << ':' << v->span.line << ':' << v->span.column << ' '
           << severity_name(v->severity) << " [" << violation_kind_name(v->kind) << "] object '"
           << v->object_name << "'";
        if (!v->class_name.empty()) os << " (" << v->class_name << ")";
        os << ": " << violation_message(*v) << '\n';
    }
    if (report.clean()) os << "clean\n";
    os << report.summary.errors << " error(s), " << report.summary.warnings << " warning(s)\n";
    return os.str();
}

std::string render_json(const TraceReport& report) {
    ordered_json doc;
    doc["version"] = 1;
    doc["overall"] = report.clean() ? "clean" : "violations";
    ordered_json objects = ordered_json::array();
    for (const ObjectReport& obj : report.objects) {
        ordered_json o;
        o["name"] = obj.name;
        o["class"] = obj.class_name;
        o["finalStates"] = obj.final_state_names;
        ordered_json violations = ordered_json::array();
        for (const Violation& v : obj.violations) {
            ordered_json j;
            j["kind"] = violation_kind_name(v.kind);
            j["severity"] = severity_name(v.severity);
            j["method"] = v.method;
            j["file"] = v.span.file;
            j["line"] = v.span.line;
            j["column"] = v.span.column;
            j["statesAtCall"] = v.state_names;
            j["enabledMethods"] = v.enabled_methods;
            violations.push_back(std::move(j));
        }
        o["violations"] = std::move(violations);
        objects.push_back(std::move(o));
    }
    doc["objects"] = std::move(objects);
    doc["summary"] = {{"errors", report.summary.errors},
                      {"warnings", report.summary.warnings}};
    return doc.dump(2) + "\n";
}

std::string render_table(const SpecificationTable& table) {
    const std::size_t n = static_cast<std::size_t>(table.n);
    std::vector<std::vector<std::string>> grid(n + 1, std::vector<std::string>(n + 1));
    grid[0][0] = "State Name";
    auto header = [&](std::size_t i) {
        return std::to_string(i) + " " + table.state_names[i];
    };
    for (std::size_t i = 0; i < n; ++i) {
        grid[0][i + 1] = header(i);
        grid[i + 1][0] = header(i);
        for (std::size_t j = 0; j < n; ++j) {
            const auto& cell = table.cells[i][j];
            if (cell.empty()) {
                grid[i + 1][j + 1] = "[]";
                continue;
            }
            std::string text;
            for (std::size_t k = 0; k < cell.size(); ++k) {
                if (k > 0) text += ", ";
                text += cell[k].method;
            }
            grid[i + 1][j + 1] = std::move(text);
        }
    }

    std::vector<std::size_t> widths(n + 1, 0);
    for (const auto& row : grid)
        for (std::size_t c = 0; c <= n; ++c) widths[c] = std::max(widths[c], row[c].size());

    std::ostringstream os;
    for (const auto& row : grid) {
        std::string line;
        for (std::size_t c = 0; c <= n; ++c) {
            if (c > 0) line += "  ";
            line += row[c];
            if (c < n) line.append(widths[c] - row[c].size(), ' ');
        }
        while (!line.empty() && line.back() == ' ') line.pop_back();
        os << line << '\n';
    }
    return os.str();
}

namespace {

ordered_json table_json(const SpecificationTable& table) {
    ordered_json t;
    t["protocol"] = table.protocol_name;
    t["class"] = table.class_name;
    t["n"] = table.n;
    ordered_json states = ordered_json::array();
    for (int i = 0; i < table.n; ++i) {
        const auto idx = static_cast<std::size_t>(i);
        ordered_json s;
        s["id"] = i;
        s["name"] = table.state_names[idx];
        s["initial"] = (i == table.initial_state);
        s["final"] = static_cast<bool>(table.final_states[idx]);
        states.push_back(std::move(s));
    }
    t["states"] = std::move(states);
    ordered_json rows = ordered_json::array();
    for (int i = 0; i < table.n; ++i) {
        ordered_json row = ordered_json::array();
        for (int j = 0; j < table.n; ++j) {
            ordered_json cell = ordered_json::array();
            for (const CellEntry& entry :
                 table.cells[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]) {
                ordered_json e;
                e["method"] = entry.method;
                if (entry.guard_label) e["guard"] = *entry.guard_label;
                if (entry.action_label) e["action"] = *entry.action_label;
                cell.push_back(std::move(e));
            }
            row.push_back(std::move(cell));
        }
        rows.push_back(std::move(row));
    }
    t["cells"] = std::move(rows);
    return t;
}

bool is_empty_seq(const UsageNode& node) {
    const auto* seq = std::get_if<SeqNode>(&node.node);
    return seq != nullptr && seq->children.empty();
}

void print_usage_node(std::ostream& os, const UsageNode& node, int indent) {
    const std::string pad(static_cast<std::size_t>(indent) * 2, ' ');
    if (const auto* seq = std::get_if<SeqNode>(&node.node)) {
        for (const UsageNode& child : seq->children) print_usage_node(os, child, indent);
    } else if (const auto* call = std::get_if<CallNode>(&node.node)) {
        os << pad << "call " << call->event.method << " at " << call->event.span.line << ':'
           << call->event.span.column << '\n';
    } else if (const auto* branch = std::get_if<BranchNode>(&node.node)) {
        os << pad << "branch at " << branch->span.line << ':' << branch->span.column << '\n';
        os << pad << "  then:\n";
        if (is_empty_seq(*branch->then_tree))
            os << pad << "    (no calls)\n";
        else
            print_usage_node(os, *branch->then_tree, indent + 2);
        if (branch->else_tree) {
            os << pad << "  else:\n";
            if (is_empty_seq(*branch->else_tree))
                os << pad << "    (no calls)\n";
            else
                print_usage_node(os, *branch->else_tree, indent + 2);
        }
    } else {
        const auto& loop = std::get<LoopNode>(node.node);
        os << pad << "loop at " << loop.span.line << ':' << loop.span.column << '\n';
        if (is_empty_seq(*loop.body))
            os << pad << "  (no calls)\n";
        else
            print_usage_node(os, *loop.body, indent + 1);
    }
}

ordered_json usage_node_json(const UsageNode& node) {
    if (const auto* seq = std::get_if<SeqNode>(&node.node)) {
        ordered_json j;
        j["kind"] = "seq";
        ordered_json children = ordered_json::array();
        for (const UsageNode& child : seq->children) children.push_back(usage_node_json(child));
        j["children"] = std::move(children);
        return j;
    }
    if (const auto* call = std::get_if<CallNode>(&node.node)) {
        ordered_json j;
        j["kind"] = "call";
        j["method"] = call->event.method;
        j["argCount"] = call->event.arg_count;
        j["line"] = call->event.span.line;
        j["column"] = call->event.span.column;
        return j;
    }
    if (const auto* branch = std::get_if<BranchNode>(&node.node)) {
        ordered_json j;
        j["kind"] = "branch";
        j["line"] = branch->span.line;
        j["column"] = branch->span.column;
        j["then"] = usage_node_json(*branch->then_tree);
        j["else"] = branch->else_tree ? usage_node_json(*branch->else_tree)
                                      : ordered_json(nullptr);
        return j;
    }
    const auto& loop = std::get<LoopNode>(node.node);
    ordered_json j;
    j["kind"] = "loop";
    j["line"] = loop.span.line;
    j["column"] = loop.span.column;
    j["body"] = usage_node_json(*loop.body);
    return j;
}

}  // namespace

std::string render_tables_json(const std::vector<SpecificationTable>& tables) {
    ordered_json doc;
    doc["version"] = 1;
    ordered_json list = ordered_json::array();
    for (const SpecificationTable& table : tables) list.push_back(table_json(table));
    doc["tables"] = std::move(list);
    return doc.dump(2) + "\n";
}

std::string render_usages_text(const UsageSet& usages) {
    std::ostringstream os;
    if (usages.usages.empty() && usages.orphan_calls.empty()) {
        os << "(no objects)\n";
        return os.str();
    }
    for (const ObjectUsage& usage : usages.usages) {
        os << "object '" << usage.var_name << "' (" << usage.class_name << ") declared at "
           << usage.decl_span.file << ':' << usage.decl_span.line << ':'
           << usage.decl_span.column << '\n';
        if (is_empty_seq(usage.tree))
            os << "  (no calls)\n";
        else
            print_usage_node(os, usage.tree, 1);
    }
    if (!usages.orphan_calls.empty()) {
        os << "orphan calls:\n";
        for (const auto& [receiver, event] : usages.orphan_calls)
            os << "  " << receiver << '.' << event.method << " at " << event.span.line << ':'
               << event.span.column << '\n';
    }
    return os.str();
}

std::string render_usages_json(const UsageSet& usages) {
    ordered_json doc;
    doc["version"] = 1;
    doc["file"] = usages.source_file;
    ordered_json objects = ordered_json::array();
    for (const ObjectUsage& usage : usages.usages) {
        ordered_json o;
        o["name"] = usage.var_name;
        o["class"] = usage.class_name;
        o["declLine"] = usage.decl_span.line;
        o["declColumn"] = usage.decl_span.column;
        o["tree"] = usage_node_json(usage.tree);
        objects.push_back(std::move(o));
    }
    doc["objects"] = std::move(objects);
    ordered_json orphans = ordered_json::array();
    for (const auto& [receiver, event] : usages.orphan_calls) {
        ordered_json o;
        o["receiver"] = receiver;
        o["method"] = event.method;
        o["argCount"] = event.arg_count;
        o["line"] = event.span.line;
        o["column"] = event.span.column;
        orphans.push_back(std::move(o));
    }
    doc["orphanCalls"] = std::move(orphans);
    return doc.dump(2) + "\n";
}

std::string render_findings_text(const std::vector<SpecError>& findings) {
    std::ostringstream os;
    int errors = 0;
    int warnings = 0;
    for (const SpecError& finding : findings) {
        os << finding.span.file << ':' << finding.span.line << ':' << finding.span.column << ' '
           << severity_name(finding.severity) << " [" << spec_error_kind_name(finding.kind)
           << "] " << finding.message << '\n';
        if (finding.severity == Severity::Error)
            ++errors;
        else
            ++warnings;
    }
    os << errors << " error(s), " << warnings << " warning(s)\n";
    return os.str();
}

std::string render_findings_json(const std::vector<SpecError>& findings) {
    ordered_json doc;
    doc["version"] = 1;
    ordered_json list = ordered_json::array();
    int errors = 0;
    int warnings = 0;
    for (const SpecError& finding : findings) {
        ordered_json f;
        f["kind"] = spec_error_kind_name(finding.kind);
        f["severity"] = severity_name(finding.severity);
        f["message"] = finding.message;
        f["file"] = finding.span.file;
        f["line"] = finding.span.line;
        f["column"] = finding.span.column;
        list.push_back(std::move(f));
        if (finding.severity == Severity::Error)
            ++errors;
        else
            ++warnings;
    }
    doc["findings"] = std::move(list);
    doc["summary"] = {{"errors", errors}, {"warnings", warnings}};
    return doc.dump(2) + "\n";
}

}  // namespace obcheck
