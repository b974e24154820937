#include "desiree/reasoner.hpp"

#include "desiree/error.hpp"
#include "desiree/parser.hpp"

#include <algorithm>
#include <cstdlib>
#include <random>
#include <set>

namespace desiree {

unsigned default_bound() {
  if (const char* s = std::getenv("DESIREE_BOUND")) {
    char* end = nullptr;
    long v = std::strtol(s, &end, 10);
    if (end != s && *end == '\0' && v >= 1 && v <= 16) return static_cast<unsigned>(v);
  }
  return 4;
}

const char* to_string(VerdictKind k) {
  switch (k) {
    case VerdictKind::Proven: return "Proven";
    case VerdictKind::Refuted: return "Refuted";
    case VerdictKind::Unknown: return "Unknown";
  }
  return "?";
}

const char* to_string(ConsistencyStatus s) {
  switch (s) {
    case ConsistencyStatus::Consistent: return "Consistent";
    case ConsistencyStatus::Inconsistent: return "Inconsistent";
    case ConsistencyStatus::Unknown: return "Unknown";
  }
  return "?";
}

const char* to_string(Fulfillment f) {
  switch (f) {
    case Fulfillment::Fulfilled: return "Fulfilled";
    case Fulfillment::Unfulfilled: return "Unfulfilled";
    case Fulfillment::Unknown: return "Unknown";
  }
  return "?";
}

std::vector<DLAxiom> translate_axioms(const std::vector<Subsumption>& axioms) {
  std::vector<DLAxiom> out;
  for (const auto& s : axioms) {
    std::string label = "axiom " + print_description(s.sub) + " :< " + print_description(s.sup);
    auto parts = conjuncts(s.sub);
    if (s.sup.is<NothingT>() && parts.size() == 2)
      out.push_back({DLAxiom::Kind::Disjoint, translate_description(parts[0]), translate_description(parts[1]), label});
    else
      out.push_back({DLAxiom::Kind::SubClassOf, translate_description(s.sub), translate_description(s.sup), label});
  }
  return out;
}

std::vector<DLAxiom> model_axioms(const Model& m) {
  auto out = translate_axioms(m.axioms);
  auto dropped = m.dropped();
  for (const auto& e : m.elements) {
    if (dropped.count(e.id) || !e.subsumption()) continue;
    if (e.kind != ElementKind::FC && e.kind != ElementKind::SC && e.kind != ElementKind::DA) continue;
    auto t = translate_element(e);
    out.insert(out.end(), t->axioms.begin(), t->axioms.end());
  }
  return out;
}

// ---------------------------------------------------------------------------
// counter-model search

namespace {

struct Signature {
  std::set<std::string> concepts, roles, data_roles, nominals, named_regions;
  std::vector<RegionExpr> ranges;
};

void collect(const DLConcept& c, Signature& s) {
  std::visit(
      [&](const auto& x) {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, DNamed>) {
          s.concepts.insert(x.name);
        } else if constexpr (std::is_same_v<T, DNominal>) {
          s.nominals.insert(x.ids.begin(), x.ids.end());
        } else if constexpr (std::is_same_v<T, DAnd> || std::is_same_v<T, DOr>) {
          for (const auto& o : x.ops) collect(o, s);
        } else if constexpr (std::is_same_v<T, DNot>) {
          collect(x.c, s);
        } else if constexpr (std::is_same_v<T, DExists> || std::is_same_v<T, DForall> ||
                             std::is_same_v<T, DCard>) {
          (is_data_concept(x.filler) ? s.data_roles : s.roles).insert(x.role.name);
          collect(x.filler, s);
        } else if constexpr (std::is_same_v<T, DData>) {
          s.ranges.push_back(x.range);
          if (auto* nr = std::get_if<NamedRegion>(&x.range)) s.named_regions.insert(nr->name);
        }
      },
      c.node().v);
}

struct Space {
  std::vector<std::string> names;  // individuals
  std::vector<std::string> concepts, roles, data_roles, regions;
  std::vector<DataValue> values;
  std::vector<Interval> region_choices;
  std::vector<unsigned> radix;

  size_t n() const { return names.size(); }

  World build(const std::vector<unsigned>& digit) const {
    World w;
    for (const auto& nm : names) w.add_individual(nm);
    size_t k = 0;
    const size_t N = n();
    for (const auto& c : concepts)
      for (size_t i = 0; i < N; ++i)
        if (digit[k++]) w.assert_concept(c, names[i]);
    for (const auto& r : roles)
      for (size_t i = 0; i < N; ++i)
        for (size_t j = 0; j < N; ++j)
          if (digit[k++]) w.assert_slot(r, names[i], names[j]);
    for (const auto& r : data_roles)
      for (size_t i = 0; i < N; ++i) {
        unsigned d = digit[k++];
        if (d) w.assert_data(r, names[i], values[d - 1]);
      }
    for (const auto& nr : regions) {
      unsigned d = digit[k++];
      if (d) w.define_region(nr, region_choices[d - 1]);
    }
    return w;
  }
};

std::vector<Value> candidate_values(const Signature& sig) {
  std::set<Value> vals;
  auto num = [&](const Rational& r) { vals.insert(Value{r}); };
  for (const auto& r : sig.ranges) {
    if (auto* iv = std::get_if<Interval>(&r)) {
      if (iv->low) {
        num(*iv->low);
        num(*iv->low - 1);
      }
      if (iv->high) {
        num(*iv->high);
        num(*iv->high + 1);
      }
      if (iv->low && iv->high) num((*iv->low + *iv->high) / 2);
      if (!iv->low && !iv->high) num(0);
      if (iv->low && !iv->high) num(*iv->low + 1);
      if (!iv->low && iv->high) num(*iv->high - 1);
    } else if (auto* vs = std::get_if<ValueSet>(&r)) {
      for (const auto& v : vs->values) vals.insert(v);
      vals.insert(Value{std::string("_other")});
    }
  }
  if (!sig.named_regions.empty())
    for (int i = 0; i <= 3; ++i) num(i);
  return {vals.begin(), vals.end()};
}

std::optional<Verdict> search(const DLConcept& sub, const DLConcept& sup, const std::vector<DLAxiom>& axioms,
                              const SearchOptions& opt) {
  Signature sig;
  collect(sub, sig);
  collect(sup, sig);
  for (const auto& ax : axioms) {
    collect(ax.a, sig);
    collect(ax.b, sig);
  }
  std::set<std::string> units;
  for (const auto& r : sig.ranges)
    if (!std::holds_alternative<NamedRegion>(r) && !unit_of(r).empty()) units.insert(unit_of(r));
  if (units.size() > 1) return std::nullopt;  // worlds would need unit conversion to be meaningful
  std::string unit = units.empty() ? "" : *units.begin();

  Space sp;
  sp.concepts.assign(sig.concepts.begin(), sig.concepts.end());
  sp.roles.assign(sig.roles.begin(), sig.roles.end());
  sp.data_roles.assign(sig.data_roles.begin(), sig.data_roles.end());
  sp.regions.assign(sig.named_regions.begin(), sig.named_regions.end());
  for (const auto& v : candidate_values(sig)) sp.values.push_back({v, v.is_number() ? unit : ""});
  for (int a = 0; a <= 3; ++a)
    for (int b = a; b <= 3; ++b) {
      Interval iv;
      iv.low = Rational(a);
      iv.high = Rational(b);
      iv.unit = unit;
      sp.region_choices.push_back(iv);
    }

  const size_t min_n = std::max<size_t>(1, sig.nominals.size());
  const size_t max_n = std::max<size_t>(opt.bound, min_n);
  std::mt19937_64 rng(opt.seed);
  size_t remaining = opt.max_worlds;

  for (size_t n = min_n; n <= max_n && remaining > 0; ++n) {
    sp.names.assign(sig.nominals.begin(), sig.nominals.end());
    for (size_t i = sp.names.size(); i < n; ++i) sp.names.push_back("_:w" + std::to_string(i - sig.nominals.size()));
    sp.radix.clear();
    sp.radix.insert(sp.radix.end(), sp.concepts.size() * n, 2);
    sp.radix.insert(sp.radix.end(), sp.roles.size() * n * n, 2);
    sp.radix.insert(sp.radix.end(), sp.data_roles.size() * n, static_cast<unsigned>(sp.values.size() + 1));
    sp.radix.insert(sp.radix.end(), sp.regions.size(), static_cast<unsigned>(sp.region_choices.size() + 1));

    double total = 1;
    for (unsigned r : sp.radix) total *= r;

    auto check = [&](const std::vector<unsigned>& digit) -> std::optional<Verdict> {
      World w = sp.build(digit);
      Bits diff = eval_dl(sub, w) - eval_dl(sup, w);
      if (!diff.any()) return std::nullopt;
      for (const auto& ax : axioms)
        if (!world_satisfies(w, ax)) return std::nullopt;
      Verdict v;
      v.kind = VerdictKind::Refuted;
      v.witness_individual = w.individuals()[diff.find_first()];
      v.witness = std::move(w);
      v.method = "bounded-model";
      return v;
    };

    std::vector<unsigned> digit(sp.radix.size(), 0);
    if (total <= static_cast<double>(remaining)) {
      remaining -= static_cast<size_t>(total);
      while (true) {
        if (auto v = check(digit)) return v;
        size_t k = 0;
        while (k < digit.size() && ++digit[k] == sp.radix[k]) digit[k++] = 0;
        if (k == digit.size()) break;
      }
    } else {
      size_t sizes_left = max_n - n + 1;
      size_t budget = std::max<size_t>(1, remaining / sizes_left);
      remaining -= std::min(remaining, budget);
      for (size_t s = 0; s < budget; ++s) {
        // alternate dense and sparse worlds
        double p = s % 2 ? 0.5 : 0.2;
        std::bernoulli_distribution on(p);
        for (size_t k = 0; k < digit.size(); ++k) {
          if (sp.radix[k] == 2) {
            digit[k] = on(rng);
          } else {
            digit[k] = on(rng) ? 0 : std::uniform_int_distribution<unsigned>(1, sp.radix[k] - 1)(rng);
          }
        }
        if (auto v = check(digit)) return v;
      }
    }
  }
  return std::nullopt;
}

}  // namespace

Verdict subsumes(const DLConcept& sub, const DLConcept& sup, const std::vector<DLAxiom>& axioms,
                 const SearchOptions& opt) {
  Verdict v;
  if (structurally_subsumes(sub, sup, axioms)) {
    v.kind = VerdictKind::Proven;
    v.method = "structural";
    return v;
  }
  if (auto r = search(sub, sup, axioms, opt)) return *r;
  v.method = "bounded-model";
  return v;
}

Verdict subsumes(const Description& sub, const Description& sup, const std::vector<Subsumption>& axioms,
                 const SearchOptions& opt) {
  return subsumes(translate_description(sub), translate_description(sup), translate_axioms(axioms), opt);
}

// ---------------------------------------------------------------------------
// consistency

namespace {

using Prov = std::set<std::string>;

bool monotone(const DLConcept& c) {
  return std::visit(
      [&](const auto& x) -> bool {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, DNot> || std::is_same_v<T, DForall>) {
          return false;
        } else if constexpr (std::is_same_v<T, DCard>) {
          return x.kind == CardKind::Min && monotone(x.filler);
        } else if constexpr (std::is_same_v<T, DAnd> || std::is_same_v<T, DOr>) {
          for (const auto& o : x.ops)
            if (!monotone(o)) return false;
          return true;
        } else if constexpr (std::is_same_v<T, DExists>) {
          return monotone(x.filler);
        } else {
          return true;
        }
      },
      c.node().v);
}

bool mentions_data(const DLConcept& c) {
  Signature s;
  collect(c, s);
  return !s.data_roles.empty();
}

class Chase {
 public:
  Chase(const std::vector<DLAxiom>& axioms, World w, unsigned fresh_limit)
      : axioms_(axioms), w_(std::move(w)), fresh_limit_(fresh_limit) {}

  ConsistencyResult run() {
    seed();
    for (int round = 0; round < 1000; ++round) {
      drain();
      if (!saturate_round()) break;
    }
    drain();
    final_checks();

    ConsistencyResult r;
    if (!clashes_.empty()) {
      r.status = ConsistencyStatus::Inconsistent;
      r.explanations = clashes_;
      return r;
    }
    if (!incomplete_ && all_hold()) {
      r.status = ConsistencyStatus::Consistent;
      r.witness = w_;
    }
    return r;
  }

 private:
  std::vector<DLAxiom> axioms_;
  World w_;
  unsigned fresh_limit_;
  unsigned fresh_ = 0;
  std::set<size_t> fresh_ids_;
  std::set<std::pair<std::string, size_t>> declared_data_;
  bool incomplete_ = false, chose_data_ = false;
  std::map<std::pair<size_t, DLConcept>, Prov> labels_;
  std::vector<std::tuple<size_t, DLConcept, Prov>> queue_;
  std::map<std::tuple<std::string, size_t, size_t>, Prov> edges_;
  std::set<std::pair<size_t, size_t>> fired_;
  std::vector<Explanation> clashes_;

  const std::string& name(size_t i) const { return w_.individuals()[i]; }

  void seed() {
    for (const auto& [ind, c] : w_.concept_facts())
      push(*w_.index_of(ind), dl::named(c), {"fact " + ind + " : " + c});
    for (const auto& [s, a, b] : w_.slot_facts())
      edges_[{s, *w_.index_of(a), *w_.index_of(b)}] = {"fact " + s + "(" + a + ", " + b + ")"};
    for (const auto& [key, v] : w_.data_facts()) declared_data_.insert({key.first, *w_.index_of(key.second)});
    for (const auto& q : w_.qualities()) {
      Prov p{"fact quality " + q.id};
      size_t qi = *w_.index_of(q.id);
      push(qi, dl::named(q.type), p);
      edges_[{"inheres_in", qi, *w_.index_of(q.subject)}] = p;
      for (const auto& o : q.observers) edges_[{"observed_by", qi, *w_.index_of(o)}] = p;
      if (q.value) declared_data_.insert({"has_value_in", qi});
    }
  }

  void push(size_t i, const DLConcept& c, Prov p) {
    auto key = std::make_pair(i, c);
    if (labels_.count(key)) return;
    labels_[key] = p;
    queue_.emplace_back(i, c, std::move(p));
  }

  std::vector<size_t> neighbours(const Role& r, size_t i) const {
    return r.inverse ? w_.predecessors(r.name, i) : w_.successors(r.name, i);
  }

  Prov edge_prov(const Role& r, size_t a, size_t b) const {
    auto key = r.inverse ? std::make_tuple(r.name, b, a) : std::make_tuple(r.name, a, b);
    auto it = edges_.find(key);
    return it == edges_.end() ? Prov{} : it->second;
  }

  void clash(size_t i, std::string msg, Prov p) {
    Explanation e;
    e.message = std::move(msg);
    e.individual = name(i);
    e.axioms.assign(p.begin(), p.end());
    for (const auto& x : clashes_)
      if (x.message == e.message) return;
    clashes_.push_back(std::move(e));
  }

  // facts about i that make the monotone concept c true
  Prov support(size_t i, const DLConcept& c, int depth = 0) const {
    Prov out;
    if (depth > 3) return out;
    auto it = labels_.find({i, c});
    if (it != labels_.end()) return it->second;
    if (auto* a = c.as<DAnd>()) {
      for (const auto& o : a->ops) {
        Prov s = support(i, o, depth + 1);
        out.insert(s.begin(), s.end());
      }
    } else if (auto* o = c.as<DOr>()) {
      for (const auto& x : o->ops)
        if (eval_dl(x, w_).test(i)) return support(i, x, depth + 1);
    } else if (c.is<DExists>() || c.is<DCard>()) {
      const Role& r = c.is<DExists>() ? c.as<DExists>()->role : c.as<DCard>()->role;
      const DLConcept& f = c.is<DExists>() ? c.as<DExists>()->filler : c.as<DCard>()->filler;
      if (is_data_concept(f)) return out;
      Bits fb = eval_dl(f, w_);
      for (size_t nb : neighbours(r, i)) {
        if (!fb.test(nb)) continue;
        Prov e = edge_prov(r, i, nb), s = support(nb, f, depth + 1);
        out.insert(e.begin(), e.end());
        out.insert(s.begin(), s.end());
      }
    }
    return out;
  }

  void drain() {
    while (!queue_.empty()) {
      auto [i, c, p] = queue_.back();
      queue_.pop_back();
      process(i, c, p);
    }
  }

  void process(size_t i, const DLConcept& c, const Prov& p) {
    if (c.is<DBottom>() || c.is<DData>()) {
      clash(i, name(i) + " is forced into Nothing", p);
    } else if (auto* n = c.as<DNamed>()) {
      w_.assert_concept(n->name, name(i));
    } else if (auto* nom = c.as<DNominal>()) {
      if (fresh_ids_.count(i)) {
        incomplete_ = true;  // would need to merge individuals
      } else if (std::find(nom->ids.begin(), nom->ids.end(), name(i)) == nom->ids.end()) {
        std::string ids;
        for (const auto& id : nom->ids) ids += (ids.empty() ? "" : ", ") + id;
        clash(i, name(i) + " is not one of {" + ids + "}", p);
      }
    } else if (auto* a = c.as<DAnd>()) {
      for (const auto& o : a->ops) push(i, o, p);
    } else if (auto* fa = c.as<DForall>()) {
      if (!is_data_concept(fa->filler))
        for (size_t nb : neighbours(fa->role, i)) {
          Prov q = p, e = edge_prov(fa->role, i, nb);
          q.insert(e.begin(), e.end());
          push(nb, fa->filler, q);
        }
    } else if (auto* ex = c.as<DExists>()) {
      need(i, ex->role, ex->filler, 1, p);
    } else if (auto* k = c.as<DCard>()) {
      if (k->kind != CardKind::Max && k->n >= 1) need(i, k->role, k->filler, k->n, p);
    }
    // DOr and DNot are checked once the chase is saturated
  }

  void need(size_t i, const Role& r, const DLConcept& f, unsigned n, const Prov& p) {
    if (is_data_concept(f)) {
      need_data(i, r, f, p);
      return;
    }
    Bits fb = eval_dl(f, w_);
    unsigned have = 0;
    for (size_t nb : neighbours(r, i))
      if (fb.test(nb) || labels_.count({nb, f})) ++have;
    for (; have < n; ++have) {
      if (fresh_ >= fresh_limit_) {
        incomplete_ = true;
        return;
      }
      std::string nm = "_:c" + std::to_string(fresh_++);
      size_t j = w_.add_individual(nm);
      fresh_ids_.insert(j);
      if (r.inverse) {
        w_.assert_slot(r.name, nm, name(i));
        edges_[{r.name, j, i}] = p;
      } else {
        w_.assert_slot(r.name, name(i), nm);
        edges_[{r.name, i, j}] = p;
      }
      push(j, f, p);
    }
  }

  void need_data(size_t i, const Role& r, const DLConcept& f, const Prov& p) {
    if (r.inverse) {
      incomplete_ = true;
      return;
    }
    auto holds = [&](const DataValue& v) {
      World probe = w_;
      size_t j = probe.add_individual("_:probe");
      probe.add_data_fact("_probe", j, v);
      return eval_dl(dl::exists(dl::role("_probe"), f), probe).test(j);
    };
    if (const DataValue* v = w_.data(r.name, i)) {
      if (holds(*v)) return;
      if (declared_data_.count({r.name, i}) && !chose_data_)
        clash(i, "the " + r.name + " value of " + name(i) + " lies outside " + to_text(f), p);
      else
        incomplete_ = true;
      return;
    }
    Signature s;
    collect(f, s);
    for (const auto& range : s.ranges) {
      std::vector<DataValue> tries;
      if (auto* iv = std::get_if<Interval>(&range)) {
        if (iv->low) tries.push_back({Value{*iv->low}, iv->unit});
        if (iv->high) tries.push_back({Value{*iv->high}, iv->unit});
        if (!iv->low && !iv->high) tries.push_back({Value{Rational(0)}, iv->unit});
      } else if (auto* vs = std::get_if<ValueSet>(&range)) {
        for (const auto& v : vs->values) tries.push_back({v, v.is_number() ? vs->unit : ""});
      } else if (const Interval* iv = w_.named_region(std::get<NamedRegion>(range).name)) {
        if (iv->low) tries.push_back({Value{*iv->low}, iv->unit});
      }
      for (const auto& v : tries)
        if (holds(v)) {
          w_.assert_data(r.name, name(i), v);
          chose_data_ = true;
          return;
        }
    }
    incomplete_ = true;
  }

  bool saturate_round() {
    bool added = false;
    for (size_t k = 0; k < axioms_.size(); ++k) {
      const auto& ax = axioms_[k];
      if (ax.kind != DLAxiom::Kind::SubClassOf || !monotone(ax.a)) continue;
      if (chose_data_ && mentions_data(ax.a)) {
        incomplete_ = true;
        continue;
      }
      Bits ext = eval_dl(ax.a, w_);
      for (size_t i = ext.find_first(); i != Bits::npos; i = ext.find_next(i)) {
        if (!fired_.insert({i, k}).second) continue;
        Prov p = support(i, ax.a);
        p.insert(ax.label);
        push(i, ax.b, p);
        added = true;
      }
    }
    std::vector<std::tuple<size_t, Role, DLConcept, Prov>> foralls;
    for (const auto& [key, p] : labels_)
      if (auto* fa = key.second.as<DForall>(); fa && !is_data_concept(fa->filler))
        foralls.emplace_back(key.first, fa->role, fa->filler, p);
    for (const auto& [i, r, f, p] : foralls)
      for (size_t nb : neighbours(r, i))
        if (!labels_.count({nb, f})) {
          Prov q = p, e = edge_prov(r, i, nb);
          q.insert(e.begin(), e.end());
          push(nb, f, q);
          added = true;
        }
    return added || !queue_.empty();
  }

  bool usable(const DLConcept& c) const { return monotone(c) && !(chose_data_ && mentions_data(c)); }

  void final_checks() {
    for (const auto& ax : axioms_) {
      if (ax.kind != DLAxiom::Kind::Disjoint) continue;
      Bits both = eval_dl(ax.a, w_) & eval_dl(ax.b, w_);
      if (!both.any()) continue;
      if (!usable(ax.a) || !usable(ax.b)) {
        incomplete_ = true;
        continue;
      }
      for (size_t i = both.find_first(); i != Bits::npos; i = both.find_next(i)) {
        Prov p = support(i, ax.a), q = support(i, ax.b);
        p.insert(q.begin(), q.end());
        p.insert(ax.label);
        clash(i, name(i) + " is both " + to_text(ax.a) + " and " + to_text(ax.b) + ", which are disjoint", p);
      }
    }
    for (const auto& [key, p] : labels_) {
      const auto& [i, c] = key;
      if (auto* n = c.as<DNot>()) {
        if (!eval_dl(n->c, w_).test(i)) continue;
        if (!usable(n->c)) {
          incomplete_ = true;
          continue;
        }
        Prov q = p, s = support(i, n->c);
        q.insert(s.begin(), s.end());
        clash(i, name(i) + " is " + to_text(n->c) + " but must not be", q);
      } else if (auto* k = c.as<DCard>(); k && k->kind != CardKind::Min && !is_data_concept(k->filler)) {
        if (!usable(k->filler)) continue;
        Bits fb = eval_dl(k->filler, w_);
        unsigned count = 0;
        Prov q = p;
        for (size_t nb : neighbours(k->role, i)) {
          if (fresh_ids_.count(nb) || !fb.test(nb)) continue;
          ++count;
          Prov e = edge_prov(k->role, i, nb), s = support(nb, k->filler);
          q.insert(e.begin(), e.end());
          q.insert(s.begin(), s.end());
        }
        if (count > k->n) clash(i, name(i) + " has too many " + k->role.name + " fillers for " + to_text(c), q);
      }
    }
  }

  bool all_hold() const {
    for (const auto& ax : axioms_)
      if (!world_satisfies(w_, ax)) return false;
    for (const auto& [key, _] : labels_)
      if (!eval_dl(key.second, w_).test(key.first)) return false;
    return true;
  }
};

}  // namespace

ConsistencyResult check_consistency(const Model& m, unsigned bound) {
  Chase chase(model_axioms(m), m.world ? *m.world : World{}, bound);
  return chase.run();
}

// ---------------------------------------------------------------------------
// query over the reified element graph

namespace {

struct Edge {
  std::string slot;
  Description target;
};

std::vector<Edge> edges_of(const Element& e) {
  std::vector<Edge> out;
  if (auto* f = e.function()) {
    for (const auto& s : f->slots) out.push_back({s.slot, s.filler});
  } else if (e.quality()) {
    Element x = e;
    try {
      x = expand_u(e);
    } catch (const Error&) {
    }
    const auto* q = x.quality();
    out.push_back({"inheres_in", q->subject});
    out.push_back({"has_value_in", region(q->region)});
    for (const auto& o : q->observers) out.push_back({"observed_by", o});
  } else if (auto* s = e.subsumption()) {
    out.push_back({"subsumee", s->sub});
    out.push_back({"subsumer", s->sup});
  }
  return out;
}

bool mentions(const Description& d, const std::string& id) {
  bool hit = false;
  visit(d, [&](const Description& x) {
    if (auto* a = x.as<Atomic>()) hit = hit || a->name == id;
    if (auto* en = x.as<Enumeration>())
      hit = hit || std::find(en->ids.begin(), en->ids.end(), id) != en->ids.end();
  });
  return hit;
}

class Query {
 public:
  explicit Query(const Model& m) : m_(m), axioms_(model_axioms(m)) {}

  bool match(const Element& e, const Description& p) const {
    if (p.is<ThingT>()) return true;
    if (p.is<NothingT>() || p.is<RegionNode>()) return false;
    if (auto* a = p.as<Atomic>()) return match_atomic(e, a->name);
    if (auto* en = p.as<Enumeration>()) return std::find(en->ids.begin(), en->ids.end(), e.id) != en->ids.end();
    if (auto* i = p.as<Intersection>()) return match(e, i->left) && match(e, i->right);
    if (auto* u = p.as<Union>()) return match(e, u->left) || match(e, u->right);
    if (auto* d = p.as<Difference>()) return match(e, d->left) && !match(e, d->right);
    if (auto* pr = p.as<InverseProjection>()) {
      for (const auto& src : m_.elements)
        if (match(src, pr->source))
          for (const auto& ed : edges_of(src))
            if (ed.slot == pr->slot && mentions(ed.target, e.id)) return true;
      return false;
    }
    const auto& s = std::get<SlotRestriction>(p.node().v);
    if (s.slot == "has_quality") return via_inverse(e, "inheres_in", s.filler);
    if (s.slot.size() > 6 && s.slot.rfind("is_", 0) == 0 && s.slot.compare(s.slot.size() - 3, 3, "_of") == 0)
      return via_inverse(e, s.slot.substr(3, s.slot.size() - 6), s.filler);
    for (const auto& ed : edges_of(e))
      if (ed.slot == s.slot && refers(ed.target, s.filler)) return true;
    return false;
  }

 private:
  const Model& m_;
  std::vector<DLAxiom> axioms_;

  bool is_element(const std::string& id) const { return m_.find(id) != nullptr; }

  bool match_atomic(const Element& e, const std::string& a) const {
    if (a == e.id || a == to_string(e.kind)) return true;
    if (auto* f = e.function())
      return a == "Function" || structurally_subsumes(dl::named(f->head), dl::named(a), axioms_);
    if (auto* q = e.quality()) return structurally_subsumes(translate_description(q->quality), dl::named(a), axioms_);
    return false;
  }

  // e is mentioned by the `slot` edge of some element matching p
  bool via_inverse(const Element& e, const std::string& slot, const Description& p) const {
    for (const auto& other : m_.elements) {
      if (!match(other, p)) continue;
      for (const auto& ed : edges_of(other))
        if (ed.slot == slot && mentions(ed.target, e.id)) return true;
    }
    return false;
  }

  bool refers(const Description& target, const Description& p) const {
    if (auto* en = p.as<Enumeration>()) {
      for (const auto& id : en->ids)
        if (is_element(id) && mentions(target, id)) return true;
    }
    if (auto* a = p.as<Atomic>(); a && is_element(a->name) && mentions(target, a->name)) return true;
    return structurally_subsumes(translate_description(target), translate_description(p), axioms_);
  }
};

}  // namespace

std::vector<std::string> query(const Model& m, const Description& pattern) {
  Query q(m);
  std::vector<std::string> out;
  for (const auto& e : m.elements)
    if (q.match(e, pattern)) out.push_back(e.id);
  std::sort(out.begin(), out.end());
  return out;
}

// ---------------------------------------------------------------------------
// strength tags

namespace {

std::string strength_word(Strength s) {
  switch (s) {
    case Strength::Strengthening: return "strengthening";
    case Strength::Weakening: return "weakening";
    case Strength::Equating: return "equating";
  }
  return "?";
}

// Rules fixed by the operator itself, independent of any proof.
std::optional<std::string> rule_violation(const OperatorApplication& a, const Model& m) {
  switch (a.op) {
    case OperatorKind::Interpret:
      if (a.strength == Strength::Weakening) return "interpretation cannot be a weakening";
      break;
    case OperatorKind::Focus:
      if (a.strength == Strength::Strengthening) return "focus cannot be a strengthening";
      break;
    case OperatorKind::Scale: {
      auto* s = std::get_if<ScaleArgs>(&a.args);
      Strength expect = s && s->direction == ScaleDirection::Up ? Strength::Strengthening : Strength::Weakening;
      if (a.strength != expect)
        return std::string(s && s->direction == ScaleDirection::Up ? "scaling up" : "scaling down") + " is a " +
               strength_word(expect);
      break;
    }
    case OperatorKind::DeUniversalize:
      if (a.strength != Strength::Weakening) return "de-universalization is a weakening";
      break;
    case OperatorKind::Observe:
      if (a.strength != Strength::Strengthening) return "observation is always a strengthening";
      break;
    case OperatorKind::Operationalize: {
      bool only_da = !a.outputs.empty();
      for (const auto& o : a.outputs) {
        const Element* e = m.find(o);
        only_da = only_da && e && e->kind == ElementKind::DA;
      }
      if (only_da && a.strength != Strength::Weakening) return "operationalizing into assumptions only is a weakening";
      break;
    }
    default: break;
  }
  return std::nullopt;
}

std::optional<DLConcept> content_of(const Element& e) {
  try {
    auto t = translate_element(e);
    if (!t) return std::nullopt;
    return t->content;
  } catch (const Error&) {
    return std::nullopt;
  }
}

// F's post-state approximated by its object (or target) inside the goal's state.
std::optional<DLConcept> effect_of(const Element& f, const Element& goal) {
  const auto* fd = f.function();
  const auto* gs = goal.subsumption();
  if (!fd || !gs) return std::nullopt;
  const SlotRestriction* s = fd->find("object");
  if (!s) s = fd->find("target");
  if (!s) return std::nullopt;
  return dl::and_({dl::exists(dl::role("subsumee"), translate_description(s->filler)),
                   dl::exists(dl::role("subsumer"), translate_description(gs->sup))});
}

enum class Refines { No, Specializes, Generalizes };

// Same head, each slot of the general one kept with a narrower filler.
bool specializes(const FunctionDesc& spec, const FunctionDesc& gen, const std::vector<DLAxiom>& axioms) {
  if (spec.head != gen.head) return false;
  for (const auto& gs : gen.slots) {
    const SlotRestriction* ss = spec.find(gs.slot);
    if (!ss || !(ss->mod == gs.mod)) return false;
    if (!structurally_subsumes(translate_description(ss->filler), translate_description(gs.filler), axioms))
      return false;
  }
  return true;
}

}  // namespace

StrengthReport check_strength_tags(const Model& m, const SearchOptions& opt) {
  StrengthReport rep;
  const auto axioms = model_axioms(m);

  for (size_t ai = 0; ai < m.applications.size(); ++ai) {
    const auto& a = m.applications[ai];
    std::pair<Verdict, Verdict> vs;  // (S: outputs ⊑ input, W: input ⊑ outputs)
    auto diag = [&](const std::string& msg) {
      rep.diagnostics.push_back({ai, a.inputs.empty() ? "" : a.inputs[0], a.strength, msg});
    };

    if (a.op == OperatorKind::Resolve || a.inputs.size() != 1) {
      rep.verdicts.push_back(vs);
      continue;
    }
    const Element* in = m.find(a.inputs[0]);
    if (!in) {
      rep.verdicts.push_back(vs);
      continue;
    }

    if (auto r = rule_violation(a, m)) {
      diag(std::string(to_string(a.op)) + " of " + in->id + " is declared " + strength_word(a.strength) + ", but " + *r);
      rep.verdicts.push_back(vs);
      continue;
    }

    std::vector<const Element*> outs;
    for (const auto& o : a.outputs)
      if (const Element* e = m.find(o); e && e->kind != ElementKind::DA) outs.push_back(e);
    auto in_c = content_of(*in);
    if (outs.empty() || !in_c) {
      rep.verdicts.push_back(vs);
      continue;
    }

    std::vector<DLConcept> out_cs;
    bool all_images = true;
    for (const Element* o : outs) {
      std::optional<DLConcept> c;
      if (a.op == OperatorKind::Operationalize && in->kind == ElementKind::FG && o->kind == ElementKind::F)
        c = effect_of(*o, *in);
      else
        c = content_of(*o);
      if (!c) all_images = false;
      else out_cs.push_back(*c);
    }
    if (!all_images) {
      rep.verdicts.push_back(vs);
      continue;
    }

    if (a.op == OperatorKind::Focus) {
      // each target is checked on its own, weakening direction only
      for (size_t k = 0; k < out_cs.size(); ++k) {
        Verdict w = subsumes(*in_c, out_cs[k], axioms, opt);
        bool bad = w.kind == VerdictKind::Refuted;
        if (k == 0 || w.kind != VerdictKind::Proven) vs.second = std::move(w);
        if (bad) {
          diag("focus of " + in->id + " into " + outs[k]->id + " is not a weakening: " + in->id + " ⋢ " +
               outs[k]->id);
          break;
        }
      }
      rep.verdicts.push_back(std::move(vs));
      continue;
    }

    DLConcept meet = simplify(dl::and_(out_cs));
    Verdict s, w;
    bool slot_refined = false;
    if (in->function() && a.op != OperatorKind::Operationalize) {
      bool all_f = true, spec_all = true, gen_all = true;
      for (const Element* o : outs) {
        if (!o->function()) {
          all_f = false;
          break;
        }
        spec_all = spec_all && specializes(*o->function(), *in->function(), axioms);
        gen_all = gen_all && specializes(*in->function(), *o->function(), axioms);
      }
      if (all_f && spec_all) {
        s.kind = VerdictKind::Proven;
        s.method = "slot-refinement";
        w = subsumes(*in_c, meet, axioms, opt);
        slot_refined = true;
      } else if (all_f && gen_all) {
        w.kind = VerdictKind::Proven;
        w.method = "slot-refinement";
        s = subsumes(meet, *in_c, axioms, opt);
        slot_refined = true;
      }
    }
    if (!slot_refined) {
      s = subsumes(meet, *in_c, axioms, opt);
      w = subsumes(*in_c, meet, axioms, opt);
    }

    auto P = [](const Verdict& v) { return v.kind == VerdictKind::Proven; };
    auto R = [](const Verdict& v) { return v.kind == VerdictKind::Refuted; };
    std::string what = std::string(to_string(a.op)) + " of " + in->id + " is declared " + strength_word(a.strength);
    switch (a.strength) {
      case Strength::Strengthening:
        if (P(w) && R(s)) diag(what + ", but the input entails the outputs and not the reverse (a weakening)");
        break;
      case Strength::Weakening:
        if (P(s) && R(w)) diag(what + ", but the outputs entail the input and not the reverse (a strengthening)");
        break;
      case Strength::Equating:
        if ((P(s) && R(w)) || (P(w) && R(s))) diag(what + ", but only one direction holds");
        break;
    }
    vs = {std::move(s), std::move(w)};
    rep.verdicts.push_back(std::move(vs));
  }
  return rep;
}

// ---------------------------------------------------------------------------
// fulfillment

FulfillmentResult propagate_fulfillment(const Model& m, std::optional<unsigned> threshold) {
  FulfillmentResult r;
  const auto dropped = m.dropped();
  for (const auto& e : m.elements) r.state[e.id] = Fulfillment::Unknown;
  for (const auto& e : m.elements)
    if (e.kind == ElementKind::DA) r.state[e.id] = Fulfillment::Fulfilled;
  for (const auto& id : m.fulfilled_marks) r.state[id] = Fulfillment::Fulfilled;
  for (const auto& id : dropped) r.state[id] = Fulfillment::Unfulfilled;

  if (threshold) {
    bool reachable = false;
    for (const auto& a : m.applications)
      if (a.is_one_to_many() && a.outputs.size() >= *threshold) reachable = true;
    if (!reachable)
      r.warnings.push_back("ThresholdUnreachable: no one-to-many application has " + std::to_string(*threshold) +
                           " or more outputs");
  }

  auto ok = [&](const std::string& id) {
    auto it = r.state.find(id);
    return it != r.state.end() && it->second == Fulfillment::Fulfilled;
  };
  bool changed = true;
  while (changed) {
    changed = false;
    for (const auto& a : m.applications) {
      if (a.op == OperatorKind::Resolve || a.outputs.empty()) continue;
      size_t count = 0;
      for (const auto& o : a.outputs) count += ok(o);
      bool fires = count == a.outputs.size() || (a.is_one_to_many() && threshold && count >= *threshold);
      if (!fires) continue;
      for (const auto& in : a.inputs) {
        if (dropped.count(in) || ok(in)) continue;
        r.state[in] = Fulfillment::Fulfilled;
        changed = true;
      }
    }
  }
  return r;
}

}  // namespace desiree
