#include "obcheck/trace.hpp"

#include <algorithm>

namespace obcheck {

const char* violation_kind_name(ViolationKind kind) {
    switch (kind) {
        case ViolationKind::IllegalCall: return "IllegalCall";
        case ViolationKind::DeadTrace: return "DeadTrace";
        case ViolationKind::UnknownMethod: return "UnknownMethod";
        case ViolationKind::OrphanReceiver: return "OrphanReceiver";
        case ViolationKind::MissingProtocol: return "MissingProtocol";
        case ViolationKind::NotInFinalState: return "NotInFinalState";
    }
    return "Violation";
}

namespace {

std::vector<std::string> names_of(const SpecificationTable& table, const StateSet& states) {
    std::vector<std::string> names;
    for (int id : states)
        if (id >= 0 && id < table.n) names.push_back(table.state_names[static_cast<std::size_t>(id)]);
    return names;
}

bool violation_less(const Violation& a, const Violation& b) {
    if (a.span.line != b.span.line) return a.span.line < b.span.line;
    if (a.span.column != b.span.column) return a.span.column < b.span.column;
    if (a.kind != b.kind) return static_cast<int>(a.kind) < static_cast<int>(b.kind);
    return a.method < b.method;
}

void finalize(TraceReport& report) {
    report.summary = Summary{};
    for (ObjectReport& obj : report.objects) {
        std::stable_sort(obj.violations.begin(), obj.violations.end(), violation_less);
        for (const Violation& v : obj.violations) {
            ++report.summary.by_kind[v.kind];
            if (v.severity == Severity::Error)
                ++report.summary.errors;
            else
                ++report.summary.warnings;
        }
    }
}

}  // namespace

void ViolationSink::emit(Violation violation) {
    if (violation.object_name.empty()) violation.object_name = object_name_;
    if (violation.class_name.empty()) violation.class_name = class_name_;
    auto key = std::make_tuple(violation.span.line, violation.span.column,
                               static_cast<int>(violation.kind), violation.method);
    if (!seen_.insert(std::move(key)).second) return;
    violations_.push_back(std::move(violation));
}

void ViolationSink::record_loop_passes(int passes) {
    max_loop_passes_ = std::max(max_loop_passes_, passes);
}

std::vector<std::string> enabled_methods(const SpecificationTable& table,
                                         const StateSet& states) {
    std::vector<std::string> methods;
    for (const auto& [method, targets] : table.step_targets) {
        for (int id : states) {
            if (id >= 0 && id < table.n && targets[static_cast<std::size_t>(id)] >= 0) {
                methods.push_back(method);
                break;
            }
        }
    }
    std::sort(methods.begin(), methods.end());
    return methods;
}

std::pair<StateSet, StepOutcome> step(const StateSet& states, const std::string& method,
                                      const SpecificationTable& table) {
    StateSet next;
    std::size_t enabled = 0;
    for (int id : states) {
        if (auto target = delta(table, id, method)) {
            next.insert(*target);
            ++enabled;
        }
    }
    StepOutcome outcome = enabled == 0                ? StepOutcome::NoneEnabled
                          : enabled == states.size() ? StepOutcome::AllEnabled
                                                      : StepOutcome::SomeEnabled;
    return {std::move(next), outcome};
}

StateSet trace_tree(const UsageNode& tree, StateSet start, const SpecificationTable& table,
                    ViolationSink& sink) {
    if (const auto* seq = std::get_if<SeqNode>(&tree.node)) {
        StateSet states = std::move(start);
        for (const UsageNode& child : seq->children) {
            states = trace_tree(child, std::move(states), table, sink);
            if (states.empty()) break;  // dead; nothing downstream can recover
        }
        return states;
    }

    if (const auto* call = std::get_if<CallNode>(&tree.node)) {
        const CallEvent& event = call->event;
        if (table.alphabet.count(event.method) == 0 && !sink.class_has_method(event.method)) {
            Violation v;
            v.kind = ViolationKind::UnknownMethod;
            v.severity = Severity::Error;
            v.method = event.method;
            v.span = event.span;
            v.states_at_call = start;
            v.state_names = names_of(table, start);
            v.enabled_methods = enabled_methods(table, start);
            sink.emit(std::move(v));
            return start;  // a naming error, not a protocol step
        }
        auto [next, outcome] = step(start, event.method, table);
        if (outcome == StepOutcome::AllEnabled) return next;

        Violation illegal;
        illegal.kind = ViolationKind::IllegalCall;
        illegal.method = event.method;
        illegal.span = event.span;
        illegal.states_at_call = start;
        illegal.state_names = names_of(table, start);
        illegal.enabled_methods = enabled_methods(table, start);
        if (outcome == StepOutcome::SomeEnabled) {
            illegal.severity = Severity::Warning;
            illegal.detail = "illegal in some possible states";
            sink.emit(std::move(illegal));
            return next;
        }
        illegal.severity = Severity::Error;
        sink.emit(std::move(illegal));

        Violation dead;
        dead.kind = ViolationKind::DeadTrace;
        dead.severity = Severity::Warning;
        dead.method = event.method;
        dead.span = event.span;
        sink.emit(std::move(dead));
        return StateSet{};
    }

    if (const auto* branch = std::get_if<BranchNode>(&tree.node)) {
        StateSet merged = trace_tree(*branch->then_tree, start, table, sink);
        if (branch->else_tree)
            merged |= trace_tree(*branch->else_tree, start, table, sink);
        else
            merged |= start;  // the branch may not be taken
        return merged;
    }

    const auto& loop = std::get<LoopNode>(tree.node);
    StateSet states = std::move(start);
    int passes = 0;
    for (;;) {
        ++passes;
        StateSet body_result = trace_tree(*loop.body, states, table, sink);
        StateSet grown = states | body_result;
        if (grown == states) break;  // the set only grows, so this ends within n passes
        states = std::move(grown);
    }
    sink.record_loop_passes(passes);
    return states;
}

TraceReport trace_all(const UsageSet& usages, const SpecTableMap& specs,
                      const ClassMethodMap& class_methods) {
    TraceReport report;
    report.source_file = usages.source_file;

    for (const ObjectUsage& usage : usages.usages) {
        ObjectReport obj;
        obj.name = usage.var_name;
        obj.class_name = usage.class_name;
        auto spec_it = specs.find(usage.class_name);
        if (spec_it == specs.end()) {
            Violation v;
            v.kind = ViolationKind::MissingProtocol;
            v.severity = Severity::Warning;
            v.object_name = obj.name;
            v.class_name = obj.class_name;
            v.span = usage.decl_span;
            v.detail = "no protocol provided for class '" + obj.class_name +
                       "'; object not traced";
            obj.violations.push_back(std::move(v));
        } else {
            const SpecificationTable& table = spec_it->second;
            ViolationSink sink;
            sink.set_context(obj.name, obj.class_name);
            auto cm = class_methods.find(usage.class_name);
            sink.set_class_methods(cm == class_methods.end() ? nullptr : &cm->second);
            obj.final_states =
                trace_tree(usage.tree, StateSet::single(table.initial_state), table, sink);
            obj.final_state_names = names_of(table, obj.final_states);
            obj.traced = true;
            obj.violations = sink.take();

            StateSet finals;
            for (int i = 0; i < table.n; ++i)
                if (table.final_states[static_cast<std::size_t>(i)]) finals.insert(i);
            if (!finals.empty() && !obj.final_states.empty() &&
                !obj.final_states.intersects(finals)) {
                Violation v;
                v.kind = ViolationKind::NotInFinalState;
                v.severity = Severity::Warning;
                v.object_name = obj.name;
                v.class_name = obj.class_name;
                v.span = usage.decl_span;
                v.states_at_call = obj.final_states;
                v.state_names = obj.final_state_names;
                obj.violations.push_back(std::move(v));
            }
        }
        report.objects.push_back(std::move(obj));
    }

    for (const auto& orphan : usages.orphan_calls) {
        const std::string& receiver = orphan.first;
        const CallEvent& event = orphan.second;
        auto it = std::find_if(report.objects.begin(), report.objects.end(),
                               [&](const ObjectReport& o) { return o.name == receiver; });
        if (it == report.objects.end()) {
            report.objects.push_back(ObjectReport{receiver, "", {}, {}, {}, false});
            it = std::prev(report.objects.end());
        }
        Violation v;
        v.kind = ViolationKind::OrphanReceiver;
        v.severity = Severity::Error;
        v.object_name = receiver;
        v.class_name = it->class_name;
        v.method = event.method;
        v.span = event.span;
        v.detail = "receiver '" + receiver + "' is not declared before this call";
        it->violations.push_back(std::move(v));
    }

    finalize(report);
    return report;
}

TraceReport trace_one(const UsageSet& usages, const std::string& object_name,
                      const SpecTableMap& specs, const ClassMethodMap& class_methods) {
    TraceReport full = trace_all(usages, specs, class_methods);
    TraceReport report;
    report.source_file = full.source_file;
    for (ObjectReport& obj : full.objects)
        if (obj.name == object_name) report.objects.push_back(std::move(obj));
    if (report.objects.empty()) {
        ObjectReport missing;
        missing.name = object_name;
        Violation v;
        v.kind = ViolationKind::OrphanReceiver;
        v.severity = Severity::Error;
        v.object_name = object_name;
        v.span = Span{usages.source_file, 1, 1, 0};
        v.detail = "object '" + object_name + "' is not declared in the main block";
        missing.violations.push_back(std::move(v));
        report.objects.push_back(std::move(missing));
    }
    finalize(report);
    return report;
}

ClassMethodMap class_methods_of(const Program& program) {
    ClassMethodMap map;
    for (const ClassDecl& cls : program.classes) {
        std::set<std::string>& methods = map[cls.name];
        for (const MethodSig& sig : cls.methods) methods.insert(sig.name);
    }
    return map;
}

}  // namespace obcheck
