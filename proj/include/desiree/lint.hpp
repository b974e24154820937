#pragma once
// Heuristic checks for the usual requirements issues.

#include "desiree/model.hpp"

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace desiree {

// Invalid is part of the taxonomy but needs stakeholders to judge; no rule emits it.
enum class Issue { Incomplete, Ambiguous, Unverifiable, Unsatisfiable, Inconsistent, Unmodifiable, Redundant, Invalid };
const char* to_string(Issue i);

struct LintFinding {
  std::string element;
  Issue issue = Issue::Incomplete;
  std::string detail;
  std::optional<OperatorKind> suggestion;
  std::optional<SourceSpan> span;
  bool operator==(const LintFinding& o) const {
    return element == o.element && issue == o.issue && detail == o.detail && suggestion == o.suggestion;
  }
};

struct LintConfig {
  std::vector<std::string> universal{"all", "any", "every", "each", "100%"};
  std::vector<std::string> default_required{"actor", "object"};
  // head or category name → required slots
  std::map<std::string, std::vector<std::string>> required{{"communicative", {"actor", "object", "target"}}};
  // category name → heads
  std::map<std::string, std::vector<std::string>> categories{
      {"communicative", {"Send", "Notify", "Inform", "Email", "Forward", "Report", "Remind", "Invite"}}};
  std::vector<std::string> conjunctions{"and", "as well as"};
  std::vector<std::string> verbs{"add",    "allow",   "book",    "cancel", "check",   "collect", "create",
                                 "delete", "display", "edit",    "email",  "export",  "generate", "import",
                                 "log",    "manage",  "notify",  "pay",    "print",   "provide", "record",
                                 "register", "remind", "reserve", "schedule", "search", "send",  "store",
                                 "support", "update",  "validate", "view"};
  std::vector<std::string> attachment{"with", "for"};
  std::vector<std::string> entity_vocabulary, quality_vocabulary;
};

// Parses `key = v1, v2` lines; `#` starts a comment. Keys: universal,
// required.default, required.<Head or category>, category.<name>,
// conjunctions, verbs, attachment, entities, qualities.
// Throws Error(Parse) on a malformed line or unknown key.
LintConfig parse_lint_config(std::string_view text);

std::vector<LintFinding> lint_model(const Model& m, const LintConfig& config = {});

struct KindGuess {
  ElementKind kind = ElementKind::Goal;
  int score = 0;
  std::vector<std::string> triggers;
};

// Best guess first; empty when nothing triggers.
std::vector<KindGuess> classify_hint(std::string_view text);

}  // namespace desiree
