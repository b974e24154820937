#pragma once
// Finite interpretations used by the set-based semantics.

#include "desiree/description.hpp"

#include <boost/dynamic_bitset.hpp>

#include <map>
#include <optional>
#include <set>
#include <string>
#include <tuple>
#include <unordered_map>
#include <vector>

namespace desiree {

using Bits = boost::dynamic_bitset<>;

struct DataValue {
  Value value;
  std::string unit;
  bool operator==(const DataValue&) const = default;
};

// A quality individual; adding one materializes
// q ∈ type, inheres_in(q, subject), has_value_in(q) = value, observed_by(q, o).
struct QualityRecord {
  std::string id;
  std::string type;
  std::string subject;
  std::optional<DataValue> value;
  std::vector<std::string> observers;
  bool operator==(const QualityRecord&) const = default;
};

class World {
 public:
  // Individuals are distinct elements; the index is stable.
  size_t add_individual(const std::string& name);
  std::optional<size_t> index_of(const std::string& name) const;
  size_t size() const { return names_.size(); }
  const std::vector<std::string>& individuals() const { return names_; }

  void assert_concept(const std::string& concept_name, const std::string& individual);
  void assert_slot(const std::string& slot, const std::string& a, const std::string& b);
  void assert_data(const std::string& slot, const std::string& a, DataValue v);
  void add_quality(QualityRecord q);
  void define_region(const std::string& name, Interval iv);

  // Indexed access. Missing entries behave as empty.
  Bits concept_ext(const std::string& name) const;
  const std::vector<size_t>& successors(const std::string& slot, size_t i) const;
  const std::vector<size_t>& predecessors(const std::string& slot, size_t i) const;
  const DataValue* data(const std::string& slot, size_t i) const;
  const Interval* named_region(const std::string& name) const;
  bool has_slot(const std::string& slot) const { return slots_.count(slot) > 0; }

  // Declared facts, for printing and equality.
  const std::set<std::pair<std::string, std::string>>& concept_facts() const { return concept_facts_; }
  const std::set<std::tuple<std::string, std::string, std::string>>& slot_facts() const { return slot_facts_; }
  const std::map<std::pair<std::string, std::string>, DataValue>& data_facts() const { return data_facts_; }
  const std::vector<QualityRecord>& qualities() const { return qualities_; }
  const std::map<std::string, Interval>& regions() const { return regions_; }
  const std::vector<std::string>& declared_individuals() const { return declared_; }

  bool operator==(const World& o) const;

  // Tuple materialization shared by assert_* and add_quality.
  void add_concept_fact(const std::string& concept_name, size_t i);
  void add_slot_fact(const std::string& slot, size_t a, size_t b);
  void add_data_fact(const std::string& slot, size_t a, DataValue v);

 private:
  struct SlotIndex {
    std::vector<std::vector<size_t>> succ, pred;
  };

  std::vector<std::string> names_;
  std::unordered_map<std::string, size_t> index_;
  std::unordered_map<std::string, Bits> concepts_;
  std::unordered_map<std::string, SlotIndex> slots_;
  std::unordered_map<std::string, std::unordered_map<size_t, DataValue>> data_;

  std::vector<std::string> declared_;
  std::set<std::pair<std::string, std::string>> concept_facts_;  // (individual, concept)
  std::set<std::tuple<std::string, std::string, std::string>> slot_facts_;  // (slot, a, b)
  std::map<std::pair<std::string, std::string>, DataValue> data_facts_;     // (slot, a)
  std::vector<QualityRecord> qualities_;
  std::map<std::string, Interval> regions_;
};

// Does the data value fall in the region? Mismatched units never match.
bool region_contains(const World& w, const RegionExpr& r, const DataValue& v);

}  // namespace desiree
