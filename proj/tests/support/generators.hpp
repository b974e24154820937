#pragma once
// Random descriptions, worlds and models for property tests.

#include "desiree/description.hpp"
#include "desiree/model.hpp"
#include "desiree/world.hpp"

#include <random>
#include <string>
#include <vector>

namespace gen {

using namespace desiree;
using Rng = std::mt19937_64;

struct Vocab {
  std::vector<std::string> concepts{"A", "B"};
  std::vector<std::string> slots{"r", "s"};
  std::vector<std::string> individuals{"i1", "i2"};
};

inline size_t pick(Rng& g, size_t n) { return std::uniform_int_distribution<size_t>(0, n - 1)(g); }
inline bool coin(Rng& g, double p = 0.5) { return std::bernoulli_distribution(p)(g); }

inline Modifier modifier(Rng& g) {
  switch (pick(g, 6)) {
    case 0: return Modifier::exactly_one();
    case 1: return Modifier::at_most(static_cast<unsigned>(1 + pick(g, 3)));
    case 2: return Modifier::at_least(static_cast<unsigned>(1 + pick(g, 3)));
    case 3: return Modifier::exactly(static_cast<unsigned>(1 + pick(g, 3)));
    case 4: return Modifier::some();
    default: return Modifier::only();
  }
}

inline Description description(Rng& g, int depth, const Vocab& v = {}) {
  size_t leaf_kinds = 4;
  size_t k = depth <= 0 ? pick(g, leaf_kinds) : pick(g, leaf_kinds + 5);
  switch (k) {
    case 0:
    case 1: return atomic(v.concepts[pick(g, v.concepts.size())]);
    case 2: {
      std::vector<std::string> ids{v.individuals[pick(g, v.individuals.size())]};
      if (coin(g, 0.3)) {
        const std::string& other = v.individuals[pick(g, v.individuals.size())];
        if (other != ids[0]) ids.push_back(other);
      }
      return enumeration(ids);
    }
    case 3: return coin(g, 0.8) ? thing() : nothing();
    case 4: return slot(v.slots[pick(g, v.slots.size())], description(g, depth - 1, v), modifier(g));
    case 5: return projection(description(g, depth - 1, v), v.slots[pick(g, v.slots.size())]);
    case 6: return conj(description(g, depth - 1, v), description(g, depth - 1, v));
    case 7: return disj(description(g, depth - 1, v), description(g, depth - 1, v));
    default: return minus(description(g, depth - 1, v), description(g, depth - 1, v));
  }
}

// Individuals are the vocabulary's first, then w3, w4, ...
inline World world(Rng& g, size_t size, const Vocab& v = {}) {
  World w;
  std::vector<std::string> names;
  for (size_t i = 0; i < size; ++i)
    names.push_back(i < v.individuals.size() ? v.individuals[i] : "w" + std::to_string(i + 1));
  for (const auto& n : names) w.add_individual(n);
  double density = std::uniform_real_distribution<double>(0.1, 0.6)(g);
  for (const auto& n : names)
    for (const auto& c : v.concepts)
      if (coin(g, density)) w.assert_concept(c, n);
  for (const auto& s : v.slots)
    for (const auto& a : names)
      for (const auto& b : names)
        if (coin(g, density * 0.7)) w.assert_slot(s, a, b);
  return w;
}

inline Rational small_number(Rng& g) {
  Rational r(static_cast<long>(pick(g, 200)), static_cast<long>(1 + pick(g, 4)));
  r.canonicalize();
  return r;
}

inline RegionExpr region(Rng& g) {
  switch (pick(g, 4)) {
    case 0: return NamedRegion{coin(g) ? "Fast" : "Good", true};
    case 1: {
      Interval iv;
      Rational a = small_number(g), b = a + small_number(g);
      if (coin(g, 0.8)) iv.low = a;
      iv.high = b;
      if (coin(g)) iv.unit = "Sec";
      return iv;
    }
    case 2: {
      ValueSet vs;
      vs.values.push_back(Value{small_number(g)});
      if (coin(g)) vs.values.push_back(Value{std::string("yes")});
      return vs;
    }
    default: return NamedRegion{"Band", false};
  }
}

inline Description subject(Rng& g) {
  if (coin(g, 0.3)) return enumeration({"the_system"});
  return description(g, 2, Vocab{{"File_search", "Task"}, {"run_of", "part_of"}, {"the_system", "the_db"}});
}

inline QualityStatement quality_statement(Rng& g, bool measurable) {
  QualityStatement q;
  q.quality = atomic(coin(g) ? "Processing_time" : "Security");
  q.subject = subject(g);
  q.region = region(g);
  if (measurable)
    while (std::holds_alternative<NamedRegion>(q.region) && std::get<NamedRegion>(q.region).qualitative)
      q.region = region(g);
  if (coin(g, 0.2)) q.observers.push_back(atomic("Surveyed_user"));
  if (coin(g, 0.3)) {
    Rational pct(static_cast<long>(1 + pick(g, 19)), 20);
    pct.canonicalize();
    q.annotations.push_back({"?X", {"inheres_in"}, pct});
  }
  return q;
}

inline FunctionDesc function_desc(Rng& g) {
  static const char* heads[] = {"Book", "Send", "Collect", "Activate"};
  static const char* slots[] = {"actor", "object", "means", "target"};
  FunctionDesc f{heads[pick(g, 4)], {}};
  size_t n = 1 + pick(g, 3);
  for (size_t i = 0; i < n; ++i)
    f.slots.push_back({slots[i], modifier(g), description(g, 1, Vocab{{"Ticket", "Manager"}, {"has"}, {"the_system"}})});
  return f;
}

// A model that validates: kinds respect operator routing and applications go
// from earlier to later elements.
inline Model model(Rng& g, int index) {
  Model m;
  m.name = "m" + std::to_string(index);
  size_t n = 2 + pick(g, 7);
  for (size_t i = 0; i < n; ++i) {
    Element e;
    e.id = "E" + std::to_string(i);
    switch (pick(g, 6)) {
      case 0:
        e.kind = ElementKind::Goal;
        e.body = NLText{coin(g) ? "the system shall be fast" : "notify users \"now\" with email"};
        break;
      case 1:
        e.kind = ElementKind::F;
        e.body = function_desc(g);
        break;
      case 2:
        e.kind = ElementKind::QG;
        e.body = quality_statement(g, false);
        break;
      case 3:
        e.kind = ElementKind::QC;
        e.body = quality_statement(g, true);
        break;
      case 4:
        e.kind = ElementKind::DA;
        e.body = Subsumption{description(g, 2), description(g, 2)};
        break;
      default:
        e.kind = ElementKind::FC;
        e.body = Subsumption{atomic("Data_table"), slot("accessed_by", description(g, 1), Modifier::only())};
    }
    m.elements.push_back(std::move(e));
  }
  // same-kind reduce chains and Goal interpretations
  for (size_t i = 0; i + 1 < n; ++i) {
    if (!coin(g, 0.4)) continue;
    const Element& a = m.elements[i];
    std::vector<std::string> outs;
    for (size_t j = i + 1; j < n; ++j)
      if (m.elements[j].kind == a.kind && a.kind != ElementKind::DA) outs.push_back(m.elements[j].id);
    if (outs.empty()) continue;
    OperatorApplication app;
    app.op = a.kind == ElementKind::Goal && outs.size() == 1 ? OperatorKind::Interpret : OperatorKind::Reduce;
    app.inputs = {a.id};
    app.outputs = {outs.front()};
    app.strength = coin(g) ? Strength::Strengthening : Strength::Equating;
    m.applications.push_back(app);
  }
  if (coin(g, 0.3)) m.axioms.push_back({atomic("A"), atomic("B")});
  if (coin(g, 0.3) && is_specification(m.elements.back().kind)) m.fulfilled_marks.push_back(m.elements.back().id);
  if (n >= 2 && coin(g, 0.2)) m.conflicts.push_back({m.elements[0].id, m.elements[1].id});
  if (coin(g, 0.3)) {
    QualitySpace qs{"Cost", {}};
    Rational x = 0;
    for (int r = 0; r < 3; ++r) {
      PrototypeRegion pr;
      pr.name = "R" + std::to_string(r);
      pr.is_interval = true;
      pr.low = x + 1;
      pr.high = x + 1 + small_number(g) + 1;
      x = pr.high;
      qs.regions.push_back(pr);
    }
    m.quality_spaces.push_back(qs);
  }
  if (coin(g, 0.3)) m.world = world(g, 1 + pick(g, 3));
  return m;
}

}  // namespace gen
