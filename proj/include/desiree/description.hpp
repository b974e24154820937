#pragma once
// Immutable description trees: concepts, slot restrictions and regions.

#include "desiree/rational.hpp"

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace desiree {

enum class ModKind { ExactlyOne, AtMost, AtLeast, Exactly, Some, Only };

struct Modifier {
  ModKind kind = ModKind::ExactlyOne;
  unsigned n = 1;  // meaningful for AtMost/AtLeast/Exactly

  static Modifier exactly_one() { return {}; }
  static Modifier at_most(unsigned n) { return {ModKind::AtMost, n}; }
  static Modifier at_least(unsigned n) { return {ModKind::AtLeast, n}; }
  static Modifier exactly(unsigned n) { return {ModKind::Exactly, n}; }
  static Modifier some() { return {ModKind::Some, 1}; }
  static Modifier only() { return {ModKind::Only, 1}; }
  bool operator==(const Modifier& o) const {
    if (kind != o.kind) return false;
    bool counted = kind == ModKind::AtMost || kind == ModKind::AtLeast || kind == ModKind::Exactly;
    return !counted || n == o.n;
  }
};

// A literal data value; numbers are exact.
struct Value {
  std::variant<Rational, std::string> v;
  bool is_number() const { return v.index() == 0; }
  const Rational& number() const { return std::get<0>(v); }
  const std::string& text() const { return std::get<1>(v); }
  bool operator==(const Value& o) const;
  bool operator<(const Value& o) const;
};

struct NamedRegion {
  std::string name;
  bool qualitative = true;
  bool operator==(const NamedRegion&) const = default;
};

// Closed interval; a missing bound is unbounded on that side.
struct Interval {
  std::optional<Rational> low, high;
  std::string unit;  // opaque, empty when unitless
  bool operator==(const Interval& o) const;
  bool contains(const Rational& x) const;
  // this ⊆ other, ignoring units
  bool within(const Interval& other) const;
};

struct ValueSet {
  std::vector<Value> values;
  std::string unit;
  bool operator==(const ValueSet&) const = default;
};

using RegionExpr = std::variant<NamedRegion, Interval, ValueSet>;

int compare(const RegionExpr& a, const RegionExpr& b);
const std::string& unit_of(const RegionExpr& r);

class Description;

struct Atomic { std::string name; };
struct Enumeration { std::vector<std::string> ids; };
struct ThingT {};
struct NothingT {};
struct RegionNode { RegionExpr region; };

struct SlotRestriction;
struct InverseProjection;
struct Intersection;
struct Union;
struct Difference;

class Description {
 public:
  struct Node;

  Description();  // Thing
  explicit Description(std::shared_ptr<const Node> n) : node_(std::move(n)) {}

  const Node& node() const { return *node_; }
  template <class T>
  const T* as() const;
  template <class T>
  bool is() const { return as<T>() != nullptr; }

  bool operator==(const Description& o) const;
  bool operator!=(const Description& o) const { return !(*this == o); }
  bool operator<(const Description& o) const;

 private:
  std::shared_ptr<const Node> node_;
};

struct SlotRestriction {
  std::string slot;
  Modifier mod;
  Description filler;
  bool operator==(const SlotRestriction& o) const {
    return slot == o.slot && mod == o.mod && filler == o.filler;
  }
};
struct InverseProjection { Description source; std::string slot; };
struct Intersection { Description left, right; };
struct Union { Description left, right; };
struct Difference { Description left, right; };

struct Description::Node {
  std::variant<Atomic, Enumeration, SlotRestriction, InverseProjection, Intersection, Union,
               Difference, RegionNode, ThingT, NothingT>
      v;
};

template <class T>
const T* Description::as() const {
  return std::get_if<T>(&node_->v);
}

// Builders
Description thing();
Description nothing();
Description atomic(std::string name);
Description enumeration(std::vector<std::string> ids);
Description slot(std::string s, Description filler, Modifier mod = {});
Description projection(Description source, std::string s);
Description conj(Description a, Description b);
Description disj(Description a, Description b);
Description minus(Description a, Description b);
Description region(RegionExpr r);

// Left-deep fold; empty yields Thing / Nothing respectively.
Description conj_all(const std::vector<Description>& ds);
Description disj_all(const std::vector<Description>& ds);

// Total structural order used for canonical sorting.
int compare(const Description& a, const Description& b);

// Flattened operands of nested Intersection (resp. Union) nodes.
std::vector<Description> conjuncts(const Description& d);
std::vector<Description> disjuncts(const Description& d);

// Canonical form. Flattens and sorts ⊓/⊔, drops Thing/Nothing units,
// rewrites A − B to A ⊓ (Thing − B), collapses complementary pairs.
// Semantics-preserving and idempotent.
Description normalize(const Description& d);

// Pre-order traversal.
void visit(const Description& d, const std::function<void(const Description&)>& fn);

bool mentions_region(const Description& d);
bool is_pure_region(const Description& d);

}  // namespace desiree
