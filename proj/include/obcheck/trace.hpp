#pragma once

#include <map>
#include <set>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "obcheck/spec_table.hpp"
#include "obcheck/usage.hpp"

namespace obcheck {

// The set of protocol states an object may occupy at a program point.
class StateSet {
public:
    StateSet() = default;
    StateSet(std::initializer_list<int> ids) : ids_(ids) {}

    static StateSet single(int id) { return StateSet{id}; }

    bool empty() const { return ids_.empty(); }
    std::size_t size() const { return ids_.size(); }
    bool contains(int id) const { return ids_.count(id) != 0; }
    void insert(int id) { ids_.insert(id); }

    StateSet& operator|=(const StateSet& other) {
        ids_.insert(other.ids_.begin(), other.ids_.end());
        return *this;
    }
    friend StateSet operator|(StateSet a, const StateSet& b) {
        a |= b;
        return a;
    }

    bool is_subset_of(const StateSet& other) const {
        for (int id : ids_)
            if (!other.contains(id)) return false;
        return true;
    }
    bool intersects(const StateSet& other) const {
        for (int id : ids_)
            if (other.contains(id)) return true;
        return false;
    }

    auto begin() const { return ids_.begin(); }
    auto end() const { return ids_.end(); }

    friend bool operator==(const StateSet&, const StateSet&) = default;

private:
    std::set<int> ids_;
};

enum class StepOutcome { AllEnabled, SomeEnabled, NoneEnabled };

enum class ViolationKind {
    IllegalCall,
    DeadTrace,
    UnknownMethod,
    OrphanReceiver,
    MissingProtocol,
    NotInFinalState,
};

const char* violation_kind_name(ViolationKind kind);

struct Violation {
    ViolationKind kind = ViolationKind::IllegalCall;
    Severity severity = Severity::Error;
    std::string object_name;
    std::string class_name;
    std::string method;  // empty for object-level kinds
    Span span;
    StateSet states_at_call;
    std::vector<std::string> state_names;       // names for states_at_call
    std::vector<std::string> enabled_methods;   // sorted
    std::string detail;                         // extra text for object-level kinds
};

// Collects violations for one object. Deduplicates by (span, kind, method)
// so loop fixpoint re-passes do not repeat reports.
class ViolationSink {
public:
    void set_context(std::string object_name, std::string class_name) {
        object_name_ = std::move(object_name);
        class_name_ = std::move(class_name);
    }
    void set_class_methods(const std::set<std::string>* methods) { class_methods_ = methods; }
    bool class_has_method(const std::string& method) const {
        return class_methods_ != nullptr && class_methods_->count(method) != 0;
    }

    void emit(Violation violation);
    void record_loop_passes(int passes);

    int max_loop_passes() const { return max_loop_passes_; }
    std::vector<Violation> take() { return std::move(violations_); }

private:
    std::string object_name_;
    std::string class_name_;
    const std::set<std::string>* class_methods_ = nullptr;
    std::vector<Violation> violations_;
    std::set<std::tuple<int, int, int, std::string>> seen_;
    int max_loop_passes_ = 0;
};

struct ObjectReport {
    std::string name;
    std::string class_name;
    StateSet final_states;
    std::vector<std::string> final_state_names;
    std::vector<Violation> violations;
    bool traced = false;
};

struct Summary {
    int errors = 0;
    int warnings = 0;
    std::map<ViolationKind, int> by_kind;
};

struct TraceReport {
    std::vector<ObjectReport> objects;  // declaration order, orphans appended
    Summary summary;
    std::string source_file;

    bool clean() const { return summary.errors == 0; }
};

// Method names with a transition from any member of the set, sorted.
std::vector<std::string> enabled_methods(const SpecificationTable& table,
                                         const StateSet& states);

// Image of the set under the step function; the outcome says whether the
// method was enabled in all, some, or none of the member states.
std::pair<StateSet, StepOutcome> step(const StateSet& states, const std::string& method,
                                      const SpecificationTable& table);

// Simulates a usage tree. Branches take the union of both arms; loops run a
// fixpoint (zero-or-more semantics). An empty result means the trace died.
StateSet trace_tree(const UsageNode& tree, StateSet start, const SpecificationTable& table,
                    ViolationSink& sink);

using SpecTableMap = std::map<std::string, SpecificationTable>;     // class -> table
using ClassMethodMap = std::map<std::string, std::set<std::string>>;

TraceReport trace_all(const UsageSet& usages, const SpecTableMap& specs,
                      const ClassMethodMap& class_methods = {});

TraceReport trace_one(const UsageSet& usages, const std::string& object_name,
                      const SpecTableMap& specs, const ClassMethodMap& class_methods = {});

ClassMethodMap class_methods_of(const Program& program);

}  // namespace obcheck
