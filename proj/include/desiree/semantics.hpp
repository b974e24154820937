#pragma once
// Set-based meaning of descriptions and elements, and translation to DL.

#include "desiree/dl.hpp"
#include "desiree/model.hpp"
#include "desiree/world.hpp"

#include <functional>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace desiree {

// Extension of a description in a world, as a bitset over world.individuals().
Bits eval_extension(const Description& d, const World& w);
std::set<std::string> eval_description(const Description& d, const World& w);

// Standard DL interpretation of a concept in the same world.
Bits eval_dl(const DLConcept& c, const World& w);
std::set<std::string> eval_concept(const DLConcept& c, const World& w);

// Does every individual satisfy the axiom?
bool world_satisfies(const World& w, const DLAxiom& ax);
std::set<std::string> to_names(const Bits& b, const World& w);

DLConcept translate_description(const Description& d);

struct ElementTranslation {
  DLConcept rooted;     // e.g. Function ⊓ Activate ⊓ ...
  DLConcept content;    // same without the kind root, for comparing elements
  std::vector<DLAxiom> axioms;
};

// NL bodies have no translation.
std::optional<ElementTranslation> translate_element(const Element& e);

// Rewrites U annotations into ∨ <pct: [p, 1]> disjuncts, in declaration order.
// Throws Error(PathMismatch) when an annotation path does not match the statement.
Element expand_u(const Element& e);

// Filler found at a slot path inside a description (searching through ⊓ and ⊔).
std::optional<Description> filler_at(const Description& d, const std::vector<std::string>& path);
// Replaces every filler at the path; nullopt if the path matches nothing.
std::optional<Description> replace_at(const Description& d, const std::vector<std::string>& path,
                                      const std::function<Description(const Description&)>& fn);

enum class HoldStatus { Holds, Violated, NotApplicable };
const char* to_string(HoldStatus s);

struct ElementVerdict {
  HoldStatus status = HoldStatus::NotApplicable;
  std::set<std::string> witnesses;
};

// Throws Error(Invalid) for NL bodies, Error(UnsupportedNestedU) for more than one U.
ElementVerdict element_holds(const Element& e, const World& w);

}  // namespace desiree
