#pragma once

#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "obcheck/protocol.hpp"

namespace obcheck {

struct CellEntry {
    std::string method;
    std::optional<std::string> guard_label;
    std::optional<std::string> action_label;
};

// State-by-state transition matrix with a precomputed step function.
// cell[i][j] is nonempty iff some transition goes from state i to state j.
struct SpecificationTable {
    int n = 0;
    std::vector<std::string> state_names;                    // index = state id
    std::vector<std::vector<std::vector<CellEntry>>> cells;  // [from][to]
    std::string protocol_name;
    std::string class_name;
    int initial_state = 0;
    std::vector<bool> final_states;
    std::set<std::string> alphabet;  // every method named by a transition
    // method -> per-state target, -1 where undefined
    std::unordered_map<std::string, std::vector<int>> step_targets;

    int state_id(std::string_view name) const;  // -1 when unknown
    bool has_final_states() const;
};

class InvalidSpecError : public std::runtime_error {
public:
    explicit InvalidSpecError(std::vector<SpecError> errors);

    const std::vector<SpecError>& errors() const noexcept { return errors_; }

private:
    std::vector<SpecError> errors_;
};

// Builds the table. Throws InvalidSpecError if validate() reports any
// error-severity finding (warnings pass).
SpecificationTable to_specification_table(const ProtocolSpec& spec);

// The unique successor of (state, method), absent when no transition applies.
std::optional<int> delta(const SpecificationTable& table, int state, const std::string& method);

}  // namespace obcheck
