#pragma once

#include <string>
#include <vector>

#include "obcheck/protocol.hpp"
#include "obcheck/spec_table.hpp"
#include "obcheck/trace.hpp"
#include "obcheck/usage.hpp"

namespace obcheck {

// One line per violation, ordered by source position, then a summary line.
// Clean reports also print "clean".
std::string render_text(const TraceReport& report);

// Stable machine-readable form; byte-identical for identical reports.
std::string render_json(const TraceReport& report);

// (n+1) x (n+1) aligned grid; empty cells render as [].
std::string render_table(const SpecificationTable& table);

std::string render_tables_json(const std::vector<SpecificationTable>& tables);

std::string render_usages_text(const UsageSet& usages);

std::string render_usages_json(const UsageSet& usages);

std::string render_findings_text(const std::vector<SpecError>& findings);

std::string render_findings_json(const std::vector<SpecError>& findings);

}  // namespace obcheck
