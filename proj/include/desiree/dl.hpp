#pragma once
// Description-logic concepts, the translation target of descriptions.

#include "desiree/description.hpp"

#include <memory>
#include <string>
#include <variant>
#include <vector>

namespace desiree {

struct Role {
  std::string name;
  bool inverse = false;
  bool operator==(const Role&) const = default;
};

enum class CardKind { Min, Max, Exact };

class DLConcept {
 public:
  struct Node;
  DLConcept();  // ⊤
  explicit DLConcept(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  const Node& node() const { return *node_; }
  template <class T>
  const T* as() const;
  template <class T>
  bool is() const { return as<T>() != nullptr; }
  bool operator==(const DLConcept& o) const;
  bool operator!=(const DLConcept& o) const { return !(*this == o); }
  bool operator<(const DLConcept& o) const;

 private:
  std::shared_ptr<const Node> node_;
};

struct DTop {};
struct DBottom {};
struct DNamed { std::string name; };
struct DNominal { std::vector<std::string> ids; };
struct DAnd { std::vector<DLConcept> ops; };
struct DOr { std::vector<DLConcept> ops; };
struct DNot { DLConcept c; };
struct DExists { Role role; DLConcept filler; };
struct DForall { Role role; DLConcept filler; };
struct DCard { CardKind kind; unsigned n; Role role; DLConcept filler; };
struct DData { RegionExpr range; };  // data range

struct DLConcept::Node {
  std::variant<DTop, DBottom, DNamed, DNominal, DAnd, DOr, DNot, DExists, DForall, DCard, DData> v;
};

template <class T>
const T* DLConcept::as() const {
  return std::get_if<T>(&node_->v);
}

int compare(const DLConcept& a, const DLConcept& b);

namespace dl {
DLConcept top();
DLConcept bottom();
DLConcept named(std::string n);
DLConcept nominal(std::vector<std::string> ids);
DLConcept and_(std::vector<DLConcept> ops);
DLConcept or_(std::vector<DLConcept> ops);
DLConcept not_(DLConcept c);
DLConcept exists(Role r, DLConcept f);
DLConcept forall(Role r, DLConcept f);
DLConcept card(CardKind k, unsigned n, Role r, DLConcept f);
DLConcept data(RegionExpr r);
inline Role role(std::string n) { return Role{std::move(n), false}; }
inline Role inv(std::string n) { return Role{std::move(n), true}; }
}  // namespace dl

// True if the concept denotes a set of data values rather than individuals.
bool is_data_concept(const DLConcept& c);

struct DLAxiom {
  enum class Kind { SubClassOf, Disjoint } kind = Kind::SubClassOf;
  DLConcept a, b;
  std::string label;  // provenance for explanations
};

// "Function ⊓ Activate ⊓ =1 actor.Manager"
std::string to_text(const DLConcept& c);
std::string to_text(const DLAxiom& a);

// Flattens nested ⊓/⊔, drops units, sorts operands. Semantics-preserving.
DLConcept simplify(const DLConcept& c);

}  // namespace desiree
