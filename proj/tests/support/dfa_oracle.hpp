#pragma once

#include <optional>
#include <string>
#include <vector>

#include "obcheck/protocol.hpp"

namespace obcheck::testsupport {

// Reference simulator: walks the transition list directly, one state at a
// time. Deliberately independent of SpecificationTable/delta/step/trace.
inline std::optional<std::size_t> dfa_first_illegal(const ProtocolSpec& spec,
                                                    const std::vector<std::string>& calls) {
    int current = -1;
    for (const State& s : spec.states)
        if (s.is_initial) current = s.id;
    for (std::size_t i = 0; i < calls.size(); ++i) {
        const Transition* hit = nullptr;
        for (const Transition& t : spec.transitions) {
            if (t.from == current && t.method == calls[i]) {
                hit = &t;
                break;
            }
        }
        if (hit == nullptr) return i;
        current = hit->to;
    }
    return std::nullopt;
}

}  // namespace obcheck::testsupport
