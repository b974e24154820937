// Structural subsumption over DL concepts.
//
// Each rule is sound for the finite-world semantics used throughout: data
// slots hold at most one value, individuals with different names are
// different, and units are never converted.

#include "desiree/reasoner.hpp"

#include <algorithm>
#include <set>

namespace desiree {

namespace {

constexpr int kMaxDepth = 8;

DLConcept prep_rec(const DLConcept& c) {
  return std::visit(
      [&](const auto& x) -> DLConcept {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, DAnd>) {
          std::vector<DLConcept> ops;
          for (const auto& o : x.ops) ops.push_back(prep_rec(o));
          return dl::and_(std::move(ops));
        } else if constexpr (std::is_same_v<T, DOr>) {
          std::vector<DLConcept> ops;
          for (const auto& o : x.ops) ops.push_back(prep_rec(o));
          return dl::or_(std::move(ops));
        } else if constexpr (std::is_same_v<T, DNot>) {
          return dl::not_(prep_rec(x.c));
        } else if constexpr (std::is_same_v<T, DExists>) {
          DLConcept f = prep_rec(x.filler);
          if (f.is<DBottom>()) return dl::bottom();
          return dl::exists(x.role, f);
        } else if constexpr (std::is_same_v<T, DForall>) {
          DLConcept f = prep_rec(x.filler);
          if (f.is<DTop>()) return dl::top();
          return dl::forall(x.role, f);
        } else if constexpr (std::is_same_v<T, DCard>) {
          DLConcept f = prep_rec(x.filler);
          if (x.n == 0) {
            if (x.kind == CardKind::Min) return dl::top();
            return dl::forall(x.role, dl::not_(f));
          }
          if (f.is<DBottom>() && x.kind != CardKind::Max) return dl::bottom();
          if (is_data_concept(f)) {
            // at most one value per data slot
            if (x.kind == CardKind::Max) return dl::top();
            if (x.n >= 2) return dl::bottom();
            return dl::exists(x.role, f);
          }
          return dl::card(x.kind, x.n, x.role, f);
        } else {
          return c;
        }
      },
      c.node().v);
}

DLConcept prep(const DLConcept& c) { return simplify(prep_rec(simplify(c))); }

std::vector<DLConcept> ops_of_and(const DLConcept& c) {
  if (auto* a = c.as<DAnd>()) return a->ops;
  return {c};
}

bool contains(const std::vector<DLConcept>& v, const DLConcept& c) {
  return std::find(v.begin(), v.end(), c) != v.end();
}

bool subset_ids(const std::vector<std::string>& a, const std::vector<std::string>& b) {
  for (const auto& x : a)
    if (std::find(b.begin(), b.end(), x) == b.end()) return false;
  return true;
}

bool existential(const DLConcept& c, Role* r, DLConcept* f) {
  if (auto* e = c.as<DExists>()) {
    *r = e->role;
    *f = e->filler;
    return true;
  }
  if (auto* k = c.as<DCard>(); k && k->kind != CardKind::Max && k->n >= 1) {
    *r = k->role;
    *f = k->filler;
    return true;
  }
  return false;
}

class Prover {
 public:
  explicit Prover(const std::vector<DLAxiom>& axioms) {
    for (const auto& ax : axioms) {
      DLAxiom p = ax;
      p.a = prep(ax.a);
      p.b = prep(ax.b);
      axioms_.push_back(std::move(p));
    }
  }

  bool sub(const DLConcept& c, const DLConcept& d, int depth) {
    if (depth > kMaxDepth) return false;
    if (c == d || d.is<DTop>() || c.is<DBottom>()) return true;
    if (is_data_concept(c) || is_data_concept(d)) return data_sub(c, d, depth);
    if (auto* o = c.as<DOr>()) {
      for (const auto& x : o->ops)
        if (!sub(x, d, depth + 1)) return false;
      return true;
    }
    if (auto* a = d.as<DAnd>()) {
      for (const auto& x : a->ops)
        if (!sub(c, x, depth + 1)) return false;
      return true;
    }
    if (auto* n = c.as<DNominal>(); n && n->ids.size() > 1) {
      for (const auto& id : n->ids)
        if (!sub(dl::nominal({id}), d, depth + 1)) return false;
      return true;
    }
    if (auto* o = d.as<DOr>()) {
      for (const auto& x : o->ops)
        if (sub(c, x, depth + 1)) return true;
    }
    if (auto* n = d.as<DNot>()) {
      if (bottom(simplify(dl::and_({c, n->c})), depth + 1)) return true;
    }

    auto S = expand(c, depth);
    if (bottom_set(S, depth)) return true;
    for (const auto& s : S)
      if (pair_sub(s, d, depth)) return true;

    // ∃r.G ⊓ ∀r.B ⊑ ∃r.(G ⊓ B)
    for (const auto& s : S) {
      Role r;
      DLConcept g;
      if (!existential(s, &r, &g)) continue;
      std::vector<DLConcept> fill{g};
      for (const auto& t : S)
        if (auto* fa = t.as<DForall>(); fa && fa->role == r) fill.push_back(fa->filler);
      if (fill.size() == 1) continue;
      DLConcept g2 = simplify(dl::and_(fill));
      DLConcept s2 = s.is<DExists>() ? dl::exists(r, g2)
                                     : dl::card(s.as<DCard>()->kind, s.as<DCard>()->n, r, g2);
      if (pair_sub(s2, d, depth + 1)) return true;
    }
    return false;
  }

  bool bottom(const DLConcept& c, int depth) {
    if (depth > kMaxDepth) return false;
    if (c.is<DBottom>()) return true;
    return bottom_set(expand(c, depth), depth);
  }

  // Chain of named regions through plain A ⊑ B axioms.
  std::set<std::string> region_chain(const std::string& name) const {
    std::set<std::string> seen{name};
    std::vector<std::string> todo{name};
    while (!todo.empty()) {
      std::string cur = todo.back();
      todo.pop_back();
      for (const auto& ax : axioms_) {
        if (ax.kind != DLAxiom::Kind::SubClassOf) continue;
        auto* a = ax.a.as<DNamed>();
        auto* b = ax.b.as<DNamed>();
        if (a && b && a->name == cur && seen.insert(b->name).second) todo.push_back(b->name);
      }
    }
    return seen;
  }

 private:
  std::vector<DLAxiom> axioms_;

  // Told closure: conjuncts of c plus right-hand sides of axioms whose
  // left-hand side is already implied.
  std::vector<DLConcept> expand(const DLConcept& c, int depth) {
    std::vector<DLConcept> S = ops_of_and(c);
    std::vector<bool> used(axioms_.size(), false);
    bool changed = true;
    while (changed) {
      changed = false;
      for (size_t i = 0; i < axioms_.size(); ++i) {
        if (used[i]) continue;
        const auto& ax = axioms_[i];
        if (ax.kind == DLAxiom::Kind::Disjoint) {
          if (matched(ax.a, S, depth) && matched(ax.b, S, depth)) {
            S.push_back(dl::bottom());
            used[i] = changed = true;
          }
        } else if (matched(ax.a, S, depth)) {
          for (const auto& r : ops_of_and(ax.b))
            if (!contains(S, r)) S.push_back(r);
          used[i] = changed = true;
        }
      }
    }
    return S;
  }

  bool matched(const DLConcept& l, const std::vector<DLConcept>& S, int depth) {
    if (l.is<DTop>() || contains(S, l)) return true;
    if (auto* a = l.as<DAnd>()) {
      for (const auto& x : a->ops)
        if (!matched(x, S, depth)) return false;
      return true;
    }
    if (auto* o = l.as<DOr>()) {
      for (const auto& x : o->ops)
        if (matched(x, S, depth)) return true;
      return false;
    }
    if (auto* n = l.as<DNominal>()) {
      for (const auto& s : S)
        if (auto* m = s.as<DNominal>(); m && subset_ids(m->ids, n->ids)) return true;
      return false;
    }
    if (depth < kMaxDepth && (l.is<DExists>() || l.is<DCard>() || l.is<DForall>())) {
      for (const auto& s : S)
        if ((s.is<DExists>() || s.is<DCard>() || s.is<DForall>()) && pair_sub(s, l, depth + 1)) return true;
    }
    return false;
  }

  bool bottom_set(const std::vector<DLConcept>& S, int depth) {
    for (const auto& s : S) {
      if (s.is<DBottom>()) return true;
      if (auto* n = s.as<DNot>(); n && matched(n->c, S, depth)) return true;
      Role r;
      DLConcept f;
      if (!existential(s, &r, &f) || is_data_concept(f) || depth >= kMaxDepth) continue;
      std::vector<DLConcept> fill{f};
      for (const auto& t : S)
        if (auto* fa = t.as<DForall>(); fa && fa->role == r) fill.push_back(fa->filler);
      if (bottom(simplify(dl::and_(fill)), depth + 1)) return true;
    }
    const DNominal* first = nullptr;
    for (const auto& s : S) {
      auto* n = s.as<DNominal>();
      if (!n) continue;
      if (first) {
        bool overlap = false;
        for (const auto& id : n->ids) overlap = overlap || contains_id(first->ids, id);
        if (!overlap) return true;
      } else {
        first = n;
      }
    }
    return false;
  }

  static bool contains_id(const std::vector<std::string>& v, const std::string& id) {
    return std::find(v.begin(), v.end(), id) != v.end();
  }

  // s is a single conjunct of the (expanded) subsumee
  bool pair_sub(const DLConcept& s, const DLConcept& d, int depth) {
    if (depth > kMaxDepth) return false;
    if (s == d || s.is<DBottom>() || d.is<DTop>()) return true;
    if (auto* a = s.as<DNominal>()) {
      if (auto* b = d.as<DNominal>()) return subset_ids(a->ids, b->ids);
      return false;
    }
    if (auto* a = s.as<DNot>()) {
      if (auto* b = d.as<DNot>()) return sub(b->c, a->c, depth + 1);
      return false;
    }
    auto same_mode = [](const DLConcept& f1, const DLConcept& f2) {
      return is_data_concept(f1) == is_data_concept(f2) || f1.is<DBottom>();
    };
    if (auto* e = d.as<DExists>()) {
      Role r;
      DLConcept f;
      if (existential(s, &r, &f) && r == e->role && same_mode(f, e->filler)) return sub(f, e->filler, depth + 1);
      return false;
    }
    if (auto* fa = d.as<DForall>()) {
      if (auto* sa = s.as<DForall>(); sa && sa->role == fa->role && same_mode(sa->filler, fa->filler))
        return sub(sa->filler, fa->filler, depth + 1);
      return false;
    }
    if (auto* dc = d.as<DCard>()) {
      auto* sc = s.as<DCard>();
      if (!sc || !(sc->role == dc->role) || !same_mode(sc->filler, dc->filler)) return false;
      const auto& f1 = sc->filler;
      const auto& f2 = dc->filler;
      switch (dc->kind) {
        case CardKind::Min:
          if (sc->kind == CardKind::Max) return false;
          return sc->n >= dc->n && sub(f1, f2, depth + 1);
        case CardKind::Max:
          if (sc->kind == CardKind::Min) return false;
          return sc->n <= dc->n && sub(f2, f1, depth + 1);
        case CardKind::Exact:
          return sc->kind == CardKind::Exact && sc->n == dc->n && sub(f1, f2, depth + 1) &&
                 sub(f2, f1, depth + 1);
      }
    }
    return false;
  }

  bool data_sub(const DLConcept& c, const DLConcept& d, int depth) {
    if (depth > kMaxDepth) return false;
    if (c == d || d.is<DTop>() || c.is<DBottom>()) return true;
    if (!is_data_concept(c) || !is_data_concept(d)) return false;
    if (auto* o = c.as<DOr>()) {
      for (const auto& x : o->ops)
        if (!data_sub(x, d, depth + 1)) return false;
      return true;
    }
    if (auto* a = d.as<DAnd>()) {
      for (const auto& x : a->ops)
        if (!x.is<DTop>() && !data_sub(c, x, depth + 1)) return false;
      return true;
    }
    if (auto* a = c.as<DAnd>()) {
      for (const auto& x : a->ops)
        if (is_data_concept(x) && data_sub(x, d, depth + 1)) return true;
    }
    if (auto* o = d.as<DOr>()) {
      for (const auto& x : o->ops)
        if (is_data_concept(x) && data_sub(c, x, depth + 1)) return true;
    }
    if (auto* a = c.as<DNot>()) {
      if (auto* b = d.as<DNot>()) return data_sub(b->c, a->c, depth + 1);
    }
    auto* a = c.as<DData>();
    auto* b = d.as<DData>();
    return a && b && region_sub(a->range, b->range);
  }

  bool region_sub(const RegionExpr& a, const RegionExpr& b) const {
    if (auto* na = std::get_if<NamedRegion>(&a)) {
      auto* nb = std::get_if<NamedRegion>(&b);
      return nb && region_chain(na->name).count(nb->name) > 0;
    }
    if (unit_of(a) != unit_of(b)) return false;
    if (auto* ia = std::get_if<Interval>(&a)) {
      if (auto* ib = std::get_if<Interval>(&b)) return ia->within(*ib);
      auto* vb = std::get_if<ValueSet>(&b);
      if (vb && ia->low && ia->high && *ia->low == *ia->high)
        return std::find(vb->values.begin(), vb->values.end(), Value{*ia->low}) != vb->values.end();
      return false;
    }
    const auto& va = std::get<ValueSet>(a);
    if (auto* vb = std::get_if<ValueSet>(&b)) {
      for (const auto& v : va.values)
        if (std::find(vb->values.begin(), vb->values.end(), v) == vb->values.end()) return false;
      return true;
    }
    if (auto* ib = std::get_if<Interval>(&b)) {
      for (const auto& v : va.values)
        if (!v.is_number() || !ib->contains(v.number())) return false;
      return true;
    }
    return false;
  }
};

}  // namespace

bool structurally_subsumes(const DLConcept& sub, const DLConcept& sup, const std::vector<DLAxiom>& axioms) {
  Prover p(axioms);
  return p.sub(prep(sub), prep(sup), 0);
}

}  // namespace desiree
