#include "desiree/world.hpp"

#include <algorithm>

namespace desiree {

size_t World::add_individual(const std::string& name) {
  auto it = index_.find(name);
  if (it != index_.end()) return it->second;
  size_t i = names_.size();
  names_.push_back(name);
  index_.emplace(name, i);
  declared_.push_back(name);
  for (auto& [_, bits] : concepts_) bits.resize(names_.size());
  return i;
}

std::optional<size_t> World::index_of(const std::string& name) const {
  auto it = index_.find(name);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

void World::add_concept_fact(const std::string& c, size_t i) {
  auto& bits = concepts_[c];
  if (bits.size() != names_.size()) bits.resize(names_.size());
  bits.set(i);
}

void World::add_slot_fact(const std::string& s, size_t a, size_t b) {
  auto& idx = slots_[s];
  size_t n = std::max(a, b) + 1;
  if (idx.succ.size() < n) {
    idx.succ.resize(n);
    idx.pred.resize(n);
  }
  auto& out = idx.succ[a];
  if (std::find(out.begin(), out.end(), b) != out.end()) return;
  out.push_back(b);
  idx.pred[b].push_back(a);
}

void World::add_data_fact(const std::string& s, size_t a, DataValue v) {
  data_[s][a] = std::move(v);
  slots_[s];  // mark the slot as known
}

void World::assert_concept(const std::string& c, const std::string& ind) {
  add_concept_fact(c, add_individual(ind));
  concept_facts_.emplace(ind, c);
}

void World::assert_slot(const std::string& s, const std::string& a, const std::string& b) {
  size_t ia = add_individual(a), ib = add_individual(b);
  add_slot_fact(s, ia, ib);
  slot_facts_.emplace(s, a, b);
}

void World::assert_data(const std::string& s, const std::string& a, DataValue v) {
  add_data_fact(s, add_individual(a), v);
  data_facts_[{s, a}] = std::move(v);
}

void World::add_quality(QualityRecord q) {
  size_t qi = add_individual(q.id);
  add_concept_fact(q.type, qi);
  add_slot_fact("inheres_in", qi, add_individual(q.subject));
  if (q.value) add_data_fact("has_value_in", qi, *q.value);
  for (const auto& o : q.observers) add_slot_fact("observed_by", qi, add_individual(o));
  qualities_.push_back(std::move(q));
}

void World::define_region(const std::string& name, Interval iv) { regions_[name] = std::move(iv); }

Bits World::concept_ext(const std::string& name) const {
  auto it = concepts_.find(name);
  if (it == concepts_.end()) return Bits(names_.size());
  Bits b = it->second;
  b.resize(names_.size());
  return b;
}

const std::vector<size_t>& World::successors(const std::string& s, size_t i) const {
  static const std::vector<size_t> empty;
  auto it = slots_.find(s);
  if (it == slots_.end() || i >= it->second.succ.size()) return empty;
  return it->second.succ[i];
}

const std::vector<size_t>& World::predecessors(const std::string& s, size_t i) const {
  static const std::vector<size_t> empty;
  auto it = slots_.find(s);
  if (it == slots_.end() || i >= it->second.pred.size()) return empty;
  return it->second.pred[i];
}

const DataValue* World::data(const std::string& s, size_t i) const {
  auto it = data_.find(s);
  if (it == data_.end()) return nullptr;
  auto jt = it->second.find(i);
  return jt == it->second.end() ? nullptr : &jt->second;
}

const Interval* World::named_region(const std::string& name) const {
  auto it = regions_.find(name);
  return it == regions_.end() ? nullptr : &it->second;
}

bool World::operator==(const World& o) const {
  std::set<std::string> a(declared_.begin(), declared_.end()), b(o.declared_.begin(), o.declared_.end());
  return a == b && concept_facts_ == o.concept_facts_ && slot_facts_ == o.slot_facts_ &&
         data_facts_ == o.data_facts_ && qualities_ == o.qualities_ && regions_ == o.regions_;
}

namespace {
bool units_agree(const std::string& region_unit, const std::string& value_unit) {
  return region_unit.empty() || value_unit.empty() || region_unit == value_unit;
}
}  // namespace

bool region_contains(const World& w, const RegionExpr& r, const DataValue& v) {
  if (auto* iv = std::get_if<Interval>(&r)) {
    return v.value.is_number() && units_agree(iv->unit, v.unit) && iv->contains(v.value.number());
  }
  if (auto* vs = std::get_if<ValueSet>(&r)) {
    if (v.value.is_number() && !units_agree(vs->unit, v.unit)) return false;
    return std::find(vs->values.begin(), vs->values.end(), v.value) != vs->values.end();
  }
  const auto& nr = std::get<NamedRegion>(r);
  const Interval* iv = w.named_region(nr.name);
  return iv && v.value.is_number() && units_agree(iv->unit, v.unit) && iv->contains(v.value.number());
}

}  // namespace desiree
