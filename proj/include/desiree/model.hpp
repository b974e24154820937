#pragma once
// Requirements models: elements, operator applications, conflicts, marks.

#include "desiree/description.hpp"
#include "desiree/world.hpp"

#include <map>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

namespace desiree {

enum class ElementKind { Goal, FG, F, FC, QG, QC, CTG, SC, DA };

const char* to_string(ElementKind k);
// "goal", "fg", "func", ... as used in model files
const char* keyword(ElementKind k);
std::optional<ElementKind> kind_from_keyword(std::string_view kw);
bool is_specification(ElementKind k);  // F, FC, QC, SC
bool is_quality_kind(ElementKind k);   // QG, QC

struct NLText {
  std::string text;
  bool operator==(const NLText&) const = default;
};

struct FunctionDesc {
  std::string head;
  std::vector<SlotRestriction> slots;
  bool operator==(const FunctionDesc&) const = default;
  const SlotRestriction* find(const std::string& slot) const;
};

// Universality relaxation: at least `pct_low` of the variable's range satisfies.
struct UAnnotation {
  std::string var;                // "?X"
  std::vector<std::string> path;  // [inheres_in] or [inheres_in, run_of] or [observed_by]
  Rational pct_low;
  bool operator==(const UAnnotation& o) const {
    return var == o.var && path == o.path && pct_low == o.pct_low;
  }
};

struct QualityStatement {
  Description quality;  // Atomic, or a union of atomics after Focus
  Description subject;
  RegionExpr region;
  std::vector<Description> observers;
  std::vector<UAnnotation> annotations;
  bool operator==(const QualityStatement& o) const {
    return quality == o.quality && subject == o.subject && compare(region, o.region) == 0 &&
           observers == o.observers && annotations == o.annotations;
  }
};

struct Subsumption {
  Description sub, sup;
  bool operator==(const Subsumption&) const = default;
};

using Body = std::variant<NLText, FunctionDesc, QualityStatement, Subsumption>;

struct Element {
  std::string id;
  ElementKind kind = ElementKind::Goal;
  Body body;
  bool operator==(const Element&) const = default;

  bool is_nl() const { return std::holds_alternative<NLText>(body); }
  const QualityStatement* quality() const { return std::get_if<QualityStatement>(&body); }
  const FunctionDesc* function() const { return std::get_if<FunctionDesc>(&body); }
  const Subsumption* subsumption() const { return std::get_if<Subsumption>(&body); }
};

enum class OperatorKind {
  Reduce, Interpret, Focus, Scale, DeUniversalize, Resolve, Operationalize, Observe
};
const char* to_string(OperatorKind k);

enum class Strength { Strengthening, Weakening, Equating };
const char* to_string(Strength s);

enum class ScaleDirection { Up, Down };

struct ScaleArgs {
  ScaleDirection direction = ScaleDirection::Down;
  // (low_factor, high_factor) for intervals or a qualifier such as "Nearly"
  std::optional<std::variant<std::pair<Rational, Rational>, std::string>> factor;
  bool operator==(const ScaleArgs& o) const;
};

struct FocusArgs {
  bool on_quality = true;  // false: focus on subject parts
  std::vector<Description> targets;
  bool operator==(const FocusArgs&) const = default;
};

// monostate | scale | focus | U annotation | observer description
using OperatorArgs = std::variant<std::monostate, ScaleArgs, FocusArgs, UAnnotation, Description>;

struct OperatorApplication {
  OperatorKind op = OperatorKind::Reduce;
  std::vector<std::string> inputs, outputs;
  Strength strength = Strength::Strengthening;
  OperatorArgs args;
  bool operator==(const OperatorApplication&) const = default;
  bool is_one_to_many() const {
    return op == OperatorKind::Reduce || op == OperatorKind::Focus || op == OperatorKind::Operationalize;
  }
};

// Prototype regions of one quality, for graded membership.
struct PrototypeRegion {
  std::string name;
  bool is_interval = false;
  std::vector<Rational> points;      // when !is_interval
  Rational low = 0, high = 0;        // when is_interval
  bool operator==(const PrototypeRegion&) const = default;
};

struct QualitySpace {
  std::string quality;
  std::vector<PrototypeRegion> regions;
  bool operator==(const QualitySpace&) const = default;
};

struct SourceSpan {
  int line = 0, column = 0;  // 1-based
  int end_line = 0, end_column = 0;
};

struct Model {
  std::string name;
  std::vector<Element> elements;
  std::vector<OperatorApplication> applications;
  std::vector<std::vector<std::string>> conflicts;
  std::vector<std::string> fulfilled_marks;
  std::vector<Subsumption> axioms;
  std::optional<World> world;
  std::vector<QualitySpace> quality_spaces;

  std::map<std::string, SourceSpan> spans;  // element id → source span; not part of equality

  bool operator==(const Model& o) const;

  const Element* find(const std::string& id) const;
  Element* find(const std::string& id);
  const QualitySpace* space(const std::string& quality) const;
  // Inputs of Resolve applications that are not among its outputs.
  std::set<std::string> dropped() const;
  // Applications whose inputs include id.
  std::vector<const OperatorApplication*> applications_from(const std::string& id) const;
};

// Allowed output kinds for the operator applied to an input kind; empty if the
// operator does not apply.
std::vector<ElementKind> output_kinds(OperatorKind op, ElementKind in);

enum class Severity { Error, Warning };

struct Diagnostic {
  Severity severity = Severity::Error;
  std::string code;     // short machine tag, e.g. "dangling-reference"
  std::string element;  // offending element id when applicable
  std::string message;
};

// Structural invariants: unique ids, references, arity and kinds per
// operator signature, acyclicity, region sanity, reserved slots.
std::vector<Diagnostic> validate_model(const Model& m);

struct Symbols {
  std::set<std::string> concepts, slots, regions, individuals;
};
Symbols free_symbols(const Model& m);

// Slots the reasoner adds itself; user descriptions may not use them.
bool is_reserved_slot(const std::string& s);

}  // namespace desiree
