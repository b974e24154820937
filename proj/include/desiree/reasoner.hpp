#pragma once
// Subsumption, consistency, queries, strength-tag checks and fulfillment.

#include "desiree/dl.hpp"
#include "desiree/model.hpp"
#include "desiree/semantics.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace desiree {

// DESIREE_BOUND from the environment, else 4.
unsigned default_bound();

struct SearchOptions {
  unsigned bound = default_bound();
  size_t max_worlds = 6000;  // candidate worlds examined per query
  uint64_t seed = 0x5eed;
};

enum class VerdictKind { Proven, Refuted, Unknown };
const char* to_string(VerdictKind k);

struct Verdict {
  VerdictKind kind = VerdictKind::Unknown;
  std::optional<World> witness;    // when Refuted
  std::string witness_individual;  // member of sub but not of sup
  std::string method;              // "structural", "search", "slot-refinement", ...
};

// Sound but incomplete. Never claims a subsumption that some world refutes.
bool structurally_subsumes(const DLConcept& sub, const DLConcept& sup, const std::vector<DLAxiom>& axioms);

// Structural proof first, then a search for a counter-model of size ≤ bound.
Verdict subsumes(const DLConcept& sub, const DLConcept& sup, const std::vector<DLAxiom>& axioms,
                 const SearchOptions& opt = {});
Verdict subsumes(const Description& sub, const Description& sup, const std::vector<Subsumption>& axioms,
                 const SearchOptions& opt = {});

std::vector<DLAxiom> translate_axioms(const std::vector<Subsumption>& axioms);

// Background knowledge of a model: declared axioms plus FC/SC/DA bodies
// (elements dropped by Resolve excluded).
std::vector<DLAxiom> model_axioms(const Model& m);

enum class ConsistencyStatus { Consistent, Inconsistent, Unknown };
const char* to_string(ConsistencyStatus s);

struct Explanation {
  std::string message;
  std::string individual;
  std::vector<std::string> axioms;  // labels: element ids or "axiom <text>"
};

struct ConsistencyResult {
  ConsistencyStatus status = ConsistencyStatus::Unknown;
  std::optional<World> witness;
  std::vector<Explanation> explanations;
};

ConsistencyResult check_consistency(const Model& m, unsigned bound = default_bound());

// Element ids whose reified structure matches the pattern, sorted.
std::vector<std::string> query(const Model& m, const Description& pattern);

struct TagDiagnostic {
  size_t application = 0;  // index into Model::applications
  std::string input;
  Strength declared = Strength::Strengthening;
  std::string message;
};

struct StrengthReport {
  std::vector<TagDiagnostic> diagnostics;
  // per application: verdict of outputs ⊑ input and input ⊑ outputs
  std::vector<std::pair<Verdict, Verdict>> verdicts;
};

StrengthReport check_strength_tags(const Model& m, const SearchOptions& opt = {});

enum class Fulfillment { Fulfilled, Unfulfilled, Unknown };
const char* to_string(Fulfillment f);

struct FulfillmentResult {
  std::map<std::string, Fulfillment> state;
  std::vector<std::string> warnings;
};

FulfillmentResult propagate_fulfillment(const Model& m, std::optional<unsigned> threshold = std::nullopt);

}  // namespace desiree
