#include "obcheck/spec_table.hpp"

#include <algorithm>

namespace obcheck {

int SpecificationTable::state_id(std::string_view name) const {
    for (int i = 0; i < n; ++i)
        if (state_names[static_cast<std::size_t>(i)] == name) return i;
    return -1;
}

bool SpecificationTable::has_final_states() const {
    return std::find(final_states.begin(), final_states.end(), true) != final_states.end();
}

InvalidSpecError::InvalidSpecError(std::vector<SpecError> errors)
    : std::runtime_error(errors.empty() ? "invalid specification" : errors.front().message),
      errors_(std::move(errors)) {}

SpecificationTable to_specification_table(const ProtocolSpec& spec) {
    std::vector<SpecError> blocking;
    for (SpecError& finding : validate(spec))
        if (finding.severity == Severity::Error) blocking.push_back(std::move(finding));
    if (!blocking.empty()) throw InvalidSpecError(std::move(blocking));

    SpecificationTable table;
    table.n = static_cast<int>(spec.states.size());
    table.protocol_name = spec.protocol_name;
    table.class_name = spec.class_name;
    table.initial_state = spec.initial_state();
    table.cells.assign(static_cast<std::size_t>(table.n),
                       std::vector<std::vector<CellEntry>>(static_cast<std::size_t>(table.n)));
    for (const State& s : spec.states) {
        table.state_names.push_back(s.name);
        table.final_states.push_back(s.is_final);
    }
    for (const Transition& t : spec.transitions) {
        table.cells[static_cast<std::size_t>(t.from)][static_cast<std::size_t>(t.to)].push_back(
            CellEntry{t.method, t.guard_label, t.action_label});
        table.alphabet.insert(t.method);
        auto [it, inserted] =
            table.step_targets.try_emplace(t.method, static_cast<std::size_t>(table.n), -1);
        it->second[static_cast<std::size_t>(t.from)] = t.to;
    }
    return table;
}

std::optional<int> delta(const SpecificationTable& table, int state, const std::string& method) {
    if (state < 0 || state >= table.n) return std::nullopt;
    auto it = table.step_targets.find(method);
    if (it == table.step_targets.end()) return std::nullopt;
    int target = it->second[static_cast<std::size_t>(state)];
    if (target < 0) return std::nullopt;
    return target;
}

}  // namespace obcheck
