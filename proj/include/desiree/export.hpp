#pragma once
// OWL2 functional-style export and JSON reports.

#include "desiree/lint.hpp"
#include "desiree/membership.hpp"
#include "desiree/model.hpp"
#include "desiree/reasoner.hpp"

#include <string>
#include <vector>

namespace desiree {

// Throws Error(NestedUNotExportable) when an element carries more than one U.
std::string emit_owl(const Model& m);

struct SubsumptionRecord {
  std::string sub, sup;  // element ids or printed descriptions
  Verdict verdict;
};

// {"version":1,"findings":[...],"fulfillment":{...},"subsumptions":[...]}
std::string emit_report(const std::vector<LintFinding>& findings, const FulfillmentResult& fulfillment,
                        const std::vector<SubsumptionRecord>& subsumptions);

// Findings alone, as an array of {element, issue, detail, suggestion, span}.
std::string emit_findings(const std::vector<LintFinding>& findings);

// Reports for the remaining CLI subcommands, all carrying "version".
std::string emit_check_report(const std::vector<Diagnostic>& validation, const Model& m,
                              const StrengthReport& tags, const ConsistencyResult& consistency);
std::string emit_query_report(const std::string& pattern, const std::vector<std::string>& matches);
std::string emit_membership_report(const std::string& quality, const Rational& value, const Degrees& degrees);

// Lower-case report spelling: "fulfilled", "unfulfilled", "unknown".
std::string report_name(Fulfillment f);

}  // namespace desiree
