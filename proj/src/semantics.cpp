#include "desiree/semantics.hpp"

#include "desiree/error.hpp"

#include <algorithm>

namespace desiree {

namespace {

bool data_filler(const Description& f) { return is_pure_region(f) && mentions_region(f); }

bool eval_data(const Description& d, const DataValue& v, const World& w) {
  if (d.is<ThingT>()) return true;
  if (d.is<NothingT>()) return false;
  if (auto* r = d.as<RegionNode>()) return region_contains(w, r->region, v);
  if (auto* i = d.as<Intersection>()) return eval_data(i->left, v, w) && eval_data(i->right, v, w);
  if (auto* u = d.as<Union>()) return eval_data(u->left, v, w) || eval_data(u->right, v, w);
  if (auto* df = d.as<Difference>()) return eval_data(df->left, v, w) && !eval_data(df->right, v, w);
  return false;
}

bool count_ok(ModKind k, unsigned n, size_t count, size_t total) {
  switch (k) {
    case ModKind::ExactlyOne: return count == 1;
    case ModKind::AtMost: return count <= n;
    case ModKind::AtLeast: return count >= n;
    case ModKind::Exactly: return count == n;
    case ModKind::Some: return count >= 1;
    case ModKind::Only: return count == total;
  }
  return false;
}

bool card_ok(CardKind k, unsigned n, size_t count) {
  switch (k) {
    case CardKind::Min: return count >= n;
    case CardKind::Max: return count <= n;
    case CardKind::Exact: return count == n;
  }
  return false;
}

bool eval_data_dl(const DLConcept& c, const DataValue& v, const World& w) {
  if (c.is<DTop>()) return true;
  if (auto* d = c.as<DData>()) return region_contains(w, d->range, v);
  if (auto* a = c.as<DAnd>()) {
    for (const auto& o : a->ops)
      if (!eval_data_dl(o, v, w)) return false;
    return true;
  }
  if (auto* o = c.as<DOr>()) {
    for (const auto& x : o->ops)
      if (eval_data_dl(x, v, w)) return true;
    return false;
  }
  if (auto* n = c.as<DNot>()) return !eval_data_dl(n->c, v, w);
  return false;
}

const std::vector<size_t>& neighbours(const World& w, const Role& r, size_t x) {
  return r.inverse ? w.predecessors(r.name, x) : w.successors(r.name, x);
}

}  // namespace

std::set<std::string> to_names(const Bits& b, const World& w) {
  std::set<std::string> out;
  for (size_t i = b.find_first(); i != Bits::npos; i = b.find_next(i)) out.insert(w.individuals()[i]);
  return out;
}

Bits eval_extension(const Description& d, const World& w) {
  const size_t n = w.size();
  return std::visit(
      [&](const auto& x) -> Bits {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, Atomic>) {
          return w.concept_ext(x.name);
        } else if constexpr (std::is_same_v<T, Enumeration>) {
          Bits b(n);
          for (const auto& id : x.ids)
            if (auto i = w.index_of(id)) b.set(*i);
          return b;
        } else if constexpr (std::is_same_v<T, ThingT>) {
          Bits b(n);
          b.set();
          return b;
        } else if constexpr (std::is_same_v<T, NothingT> || std::is_same_v<T, RegionNode>) {
          return Bits(n);
        } else if constexpr (std::is_same_v<T, Intersection>) {
          return eval_extension(x.left, w) & eval_extension(x.right, w);
        } else if constexpr (std::is_same_v<T, Union>) {
          return eval_extension(x.left, w) | eval_extension(x.right, w);
        } else if constexpr (std::is_same_v<T, Difference>) {
          return eval_extension(x.left, w) - eval_extension(x.right, w);
        } else if constexpr (std::is_same_v<T, InverseProjection>) {
          Bits src = eval_extension(x.source, w);
          Bits b(n);
          for (size_t y = src.find_first(); y != Bits::npos; y = src.find_next(y))
            for (size_t t : w.successors(x.slot, y)) b.set(t);
          return b;
        } else {  // SlotRestriction
          Bits b(n);
          if (data_filler(x.filler)) {
            for (size_t i = 0; i < n; ++i) {
              const DataValue* v = w.data(x.slot, i);
              size_t total = v ? 1 : 0;
              size_t count = v && eval_data(x.filler, *v, w) ? 1 : 0;
              if (count_ok(x.mod.kind, x.mod.n, count, total)) b.set(i);
            }
            return b;
          }
          Bits f = eval_extension(x.filler, w);
          for (size_t i = 0; i < n; ++i) {
            const auto& succ = w.successors(x.slot, i);
            size_t count = 0;
            for (size_t s : succ) count += f.test(s);
            if (count_ok(x.mod.kind, x.mod.n, count, succ.size())) b.set(i);
          }
          return b;
        }
      },
      d.node().v);
}

std::set<std::string> eval_description(const Description& d, const World& w) {
  return to_names(eval_extension(d, w), w);
}

Bits eval_dl(const DLConcept& c, const World& w) {
  const size_t n = w.size();
  return std::visit(
      [&](const auto& x) -> Bits {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, DTop>) {
          Bits b(n);
          b.set();
          return b;
        } else if constexpr (std::is_same_v<T, DBottom> || std::is_same_v<T, DData>) {
          return Bits(n);
        } else if constexpr (std::is_same_v<T, DNamed>) {
          return w.concept_ext(x.name);
        } else if constexpr (std::is_same_v<T, DNominal>) {
          Bits b(n);
          for (const auto& id : x.ids)
            if (auto i = w.index_of(id)) b.set(*i);
          return b;
        } else if constexpr (std::is_same_v<T, DAnd>) {
          Bits b(n);
          b.set();
          for (const auto& o : x.ops) b &= eval_dl(o, w);
          return b;
        } else if constexpr (std::is_same_v<T, DOr>) {
          Bits b(n);
          for (const auto& o : x.ops) b |= eval_dl(o, w);
          return b;
        } else if constexpr (std::is_same_v<T, DNot>) {
          return ~eval_dl(x.c, w);
        } else {
          // role restrictions: count fillers per individual
          const Role& r = x.role;
          const DLConcept& f = x.filler;
          Bits b(n);
          if (is_data_concept(f)) {
            for (size_t i = 0; i < n; ++i) {
              const DataValue* v = r.inverse ? nullptr : w.data(r.name, i);
              size_t total = v ? 1 : 0;
              size_t count = v && eval_data_dl(f, *v, w) ? 1 : 0;
              bool ok;
              if constexpr (std::is_same_v<T, DExists>) ok = count >= 1;
              else if constexpr (std::is_same_v<T, DForall>) ok = count == total;
              else ok = card_ok(x.kind, x.n, count);
              if (ok) b.set(i);
            }
            return b;
          }
          Bits fb = eval_dl(f, w);
          for (size_t i = 0; i < n; ++i) {
            const auto& nb = neighbours(w, r, i);
            size_t count = 0;
            for (size_t s : nb) count += fb.test(s);
            bool ok;
            if constexpr (std::is_same_v<T, DExists>) ok = count >= 1;
            else if constexpr (std::is_same_v<T, DForall>) ok = count == nb.size();
            else ok = card_ok(x.kind, x.n, count);
            if (ok) b.set(i);
          }
          return b;
        }
      },
      c.node().v);
}

std::set<std::string> eval_concept(const DLConcept& c, const World& w) { return to_names(eval_dl(c, w), w); }

bool world_satisfies(const World& w, const DLAxiom& ax) {
  Bits a = eval_dl(ax.a, w), b = eval_dl(ax.b, w);
  if (ax.kind == DLAxiom::Kind::Disjoint) return !(a & b).any();
  if (!a.is_subset_of(b)) return false;
  // ordering axioms between named regions constrain the regions themselves
  auto* na = ax.a.as<DNamed>();
  auto* nb = ax.b.as<DNamed>();
  if (na && nb) {
    const Interval* ra = w.named_region(na->name);
    if (ra) {
      const Interval* rb = w.named_region(nb->name);
      if (!rb || !ra->within(*rb) || ra->unit != rb->unit) return false;
    }
  }
  return true;
}

DLConcept translate_description(const Description& d) {
  return std::visit(
      [&](const auto& x) -> DLConcept {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, Atomic>) {
          return dl::named(x.name);
        } else if constexpr (std::is_same_v<T, Enumeration>) {
          return dl::nominal(x.ids);
        } else if constexpr (std::is_same_v<T, ThingT>) {
          return dl::top();
        } else if constexpr (std::is_same_v<T, NothingT>) {
          return dl::bottom();
        } else if constexpr (std::is_same_v<T, RegionNode>) {
          return dl::data(x.region);
        } else if constexpr (std::is_same_v<T, Intersection>) {
          std::vector<DLConcept> ops;
          for (const auto& c : conjuncts(d)) ops.push_back(translate_description(c));
          return dl::and_(std::move(ops));
        } else if constexpr (std::is_same_v<T, Union>) {
          std::vector<DLConcept> ops;
          for (const auto& c : disjuncts(d)) ops.push_back(translate_description(c));
          return dl::or_(std::move(ops));
        } else if constexpr (std::is_same_v<T, Difference>) {
          return dl::and_({translate_description(x.left), dl::not_(translate_description(x.right))});
        } else if constexpr (std::is_same_v<T, InverseProjection>) {
          return dl::exists(dl::inv(x.slot), translate_description(x.source));
        } else {  // SlotRestriction
          DLConcept f = translate_description(x.filler);
          Role r = dl::role(x.slot);
          switch (x.mod.kind) {
            case ModKind::ExactlyOne:
              // data slots carry at most one value, so =1 and ∃ coincide
              if (is_data_concept(f)) return dl::exists(r, f);
              return dl::card(CardKind::Exact, 1, r, f);
            case ModKind::AtMost: return dl::card(CardKind::Max, x.mod.n, r, f);
            case ModKind::AtLeast: return dl::card(CardKind::Min, x.mod.n, r, f);
            case ModKind::Exactly: return dl::card(CardKind::Exact, x.mod.n, r, f);
            case ModKind::Some: return dl::exists(r, f);
            case ModKind::Only: return dl::forall(r, f);
          }
          return dl::top();
        }
      },
      d.node().v);
}

std::optional<Description> filler_at(const Description& d, const std::vector<std::string>& path) {
  if (path.empty()) return d;
  if (auto* s = d.as<SlotRestriction>()) {
    if (s->slot != path[0]) return std::nullopt;
    return filler_at(s->filler, {path.begin() + 1, path.end()});
  }
  if (auto* i = d.as<Intersection>()) {
    if (auto r = filler_at(i->left, path)) return r;
    return filler_at(i->right, path);
  }
  if (auto* u = d.as<Union>()) {
    if (auto r = filler_at(u->left, path)) return r;
    return filler_at(u->right, path);
  }
  if (auto* df = d.as<Difference>()) return filler_at(df->left, path);
  return std::nullopt;
}

std::optional<Description> replace_at(const Description& d, const std::vector<std::string>& path,
                                      const std::function<Description(const Description&)>& fn) {
  if (path.empty()) return fn(d);
  if (auto* s = d.as<SlotRestriction>()) {
    if (s->slot != path[0]) return std::nullopt;
    auto inner = replace_at(s->filler, {path.begin() + 1, path.end()}, fn);
    if (!inner) return std::nullopt;
    return slot(s->slot, *inner, s->mod);
  }
  auto pair = [&](const Description& l, const Description& r, auto build) -> std::optional<Description> {
    auto nl = replace_at(l, path, fn);
    auto nr = replace_at(r, path, fn);
    if (!nl && !nr) return std::nullopt;
    return build(nl ? *nl : l, nr ? *nr : r);
  };
  if (auto* i = d.as<Intersection>()) return pair(i->left, i->right, conj);
  if (auto* u = d.as<Union>()) return pair(u->left, u->right, disj);
  if (auto* df = d.as<Difference>()) {
    auto nl = replace_at(df->left, path, fn);
    if (!nl) return std::nullopt;
    return minus(*nl, df->right);
  }
  return std::nullopt;
}

namespace {

Description pct_disjunct(const Rational& p) {
  Interval iv;
  iv.low = p;
  iv.high = Rational(1);
  return slot("pct", region(iv));
}

}  // namespace

Element expand_u(const Element& e) {
  const QualityStatement* q = e.quality();
  if (!q || q->annotations.empty()) return e;
  QualityStatement out = *q;
  out.annotations.clear();
  for (const auto& u : q->annotations) {
    auto widen = [&](const Description& f) { return disj(f, pct_disjunct(u.pct_low)); };
    if (u.path.empty()) throw Error(ErrorCode::PathMismatch, "empty U path in " + e.id);
    std::vector<std::string> rest(u.path.begin() + 1, u.path.end());
    if (u.path[0] == "inheres_in") {
      auto r = replace_at(out.subject, rest, widen);
      if (!r) throw Error(ErrorCode::PathMismatch, "U path does not match the subject of " + e.id);
      out.subject = *r;
    } else if (u.path[0] == "observed_by") {
      if (out.observers.empty())
        throw Error(ErrorCode::PathMismatch, e.id + " has no observer for U over observed_by");
      bool any = false;
      for (auto& o : out.observers) {
        if (auto r = replace_at(o, rest, widen)) {
          o = *r;
          any = true;
        }
      }
      if (!any) throw Error(ErrorCode::PathMismatch, "U path does not match the observer of " + e.id);
    } else {
      throw Error(ErrorCode::PathMismatch, "U path must start at inheres_in or observed_by");
    }
  }
  Element r = e;
  r.body = out;
  return r;
}

std::optional<ElementTranslation> translate_element(const Element& e) {
  ElementTranslation t;
  if (auto* f = e.function()) {
    std::vector<DLConcept> ops{dl::named(f->head)};
    for (const auto& s : f->slots) ops.push_back(translate_description(slot(s.slot, s.filler, s.mod)));
    t.content = dl::and_(ops);
    ops.insert(ops.begin(), dl::named("Function"));
    t.rooted = dl::and_(std::move(ops));
    return t;
  }
  if (auto* s = e.subsumption()) {
    DLConcept c = translate_description(s->sub), d = translate_description(s->sup);
    t.content = t.rooted = dl::and_({dl::exists(dl::role("subsumee"), c), dl::exists(dl::role("subsumer"), d)});
    auto parts = conjuncts(s->sub);
    if (s->sup.is<NothingT>() && parts.size() == 2) {
      t.axioms.push_back({DLAxiom::Kind::Disjoint, translate_description(parts[0]),
                          translate_description(parts[1]), e.id});
    } else {
      t.axioms.push_back({DLAxiom::Kind::SubClassOf, c, d, e.id});
    }
    return t;
  }
  if (e.quality()) {
    Element x = expand_u(e);
    const QualityStatement& q = *x.quality();
    std::vector<DLConcept> ops{translate_description(q.quality),
                               dl::exists(dl::role("inheres_in"), translate_description(q.subject)),
                               dl::exists(dl::role("has_value_in"), dl::data(q.region))};
    for (const auto& o : q.observers)
      ops.push_back(dl::card(CardKind::Exact, 1, dl::role("observed_by"), translate_description(o)));
    t.content = dl::and_(ops);
    ops.insert(ops.begin(), dl::named(to_string(e.kind)));
    t.rooted = dl::and_(std::move(ops));
    return t;
  }
  return std::nullopt;
}

const char* to_string(HoldStatus s) {
  switch (s) {
    case HoldStatus::Holds: return "Holds";
    case HoldStatus::Violated: return "Violated";
    case HoldStatus::NotApplicable: return "NotApplicable";
  }
  return "?";
}

namespace {

ElementVerdict from_violators(const Bits& scope, const Bits& bad, const World& w) {
  ElementVerdict v;
  if (!scope.any()) return v;
  v.witnesses = to_names(bad, w);
  v.status = v.witnesses.empty() ? HoldStatus::Holds : HoldStatus::Violated;
  return v;
}

ElementVerdict quality_holds(const Element& e, const QualityStatement& q, const World& w) {
  if (q.annotations.size() > 1)
    throw Error(ErrorCode::UnsupportedNestedU, e.id + ": only one U annotation can be checked on a world");
  const size_t n = w.size();
  Bits subjects = eval_extension(q.subject, w);
  if (!subjects.any()) return {};
  Bits qtype = eval_extension(q.quality, w);

  std::vector<Bits> observer_ext;
  for (const auto& o : q.observers) {
    observer_ext.push_back(eval_extension(o, w));
    if (!observer_ext.back().any()) return {};
  }

  auto relevant = [&](size_t qi) {
    for (const auto& ob : observer_ext) {
      bool seen = false;
      for (size_t o : w.successors("observed_by", qi)) seen = seen || ob.test(o);
      if (!seen) return false;
    }
    return true;
  };
  auto sat = [&](size_t qi) {
    const DataValue* v = w.data("has_value_in", qi);
    return v && region_contains(w, q.region, *v);
  };
  // qualities of subject s that the statement quantifies over
  auto quals = [&](size_t s) {
    std::vector<size_t> out;
    for (size_t qi : w.predecessors("inheres_in", s))
      if (qtype.test(qi) && relevant(qi)) out.push_back(qi);
    return out;
  };
  auto subject_ok = [&](size_t s) {
    for (size_t qi : quals(s))
      if (!sat(qi)) return false;
    return true;
  };

  Bits bad_subjects(n);
  for (size_t s = subjects.find_first(); s != Bits::npos; s = subjects.find_next(s))
    if (!subject_ok(s)) bad_subjects.set(s);

  if (q.annotations.empty()) return from_violators(subjects, bad_subjects, w);

  const UAnnotation& u = q.annotations[0];
  auto fraction_verdict = [&](const Bits& scope, const Bits& bad) {
    ElementVerdict v;
    size_t total = scope.count();
    if (total == 0) return v;
    Rational good(static_cast<long>(total - bad.count()), static_cast<long>(total));
    v.status = good >= u.pct_low ? HoldStatus::Holds : HoldStatus::Violated;
    if (v.status == HoldStatus::Violated) v.witnesses = to_names(bad, w);
    return v;
  };

  if (u.path.size() == 1 && u.path[0] == "inheres_in") return fraction_verdict(subjects, bad_subjects);

  if (u.path.size() == 1 && u.path[0] == "observed_by") {
    if (observer_ext.empty()) throw Error(ErrorCode::PathMismatch, e.id + " has no observer");
    const Bits& obs = observer_ext[0];
    Bits bad(n);
    for (size_t s = subjects.find_first(); s != Bits::npos; s = subjects.find_next(s))
      for (size_t qi : quals(s))
        if (!sat(qi))
          for (size_t o : w.successors("observed_by", qi))
            if (obs.test(o)) bad.set(o);
    return fraction_verdict(obs, bad);
  }

  // deeper path: quantify over the filler reached from the subject
  std::vector<std::string> rest(u.path.begin() + 1, u.path.end());
  auto filler = filler_at(q.subject, rest);
  if (!filler) throw Error(ErrorCode::PathMismatch, "U path does not match the subject of " + e.id);
  Bits range = eval_extension(*filler, w);
  Bits bad(n);
  for (size_t s = bad_subjects.find_first(); s != Bits::npos; s = bad_subjects.find_next(s)) {
    // walk the slot chain from the failing subject
    Bits frontier(n);
    frontier.set(s);
    for (const auto& sl : rest) {
      Bits nxt(n);
      for (size_t x = frontier.find_first(); x != Bits::npos; x = frontier.find_next(x))
        for (size_t y : w.successors(sl, x)) nxt.set(y);
      frontier = nxt;
    }
    bad |= frontier & range;
  }
  return fraction_verdict(range, bad);
}

}  // namespace

ElementVerdict element_holds(const Element& e, const World& w) {
  if (auto* s = e.subsumption()) {
    Bits sub = eval_extension(s->sub, w);
    return from_violators(sub, sub - eval_extension(s->sup, w), w);
  }
  if (auto* f = e.function()) {
    Bits runs = w.concept_ext(e.id);
    std::vector<Description> parts{atomic(f->head)};
    for (const auto& sl : f->slots) parts.push_back(slot(sl.slot, sl.filler, sl.mod));
    return from_violators(runs, runs - eval_extension(conj_all(parts), w), w);
  }
  if (auto* q = e.quality()) return quality_holds(e, *q, w);
  throw Error(ErrorCode::Invalid, e.id + " is natural language and has no set semantics");
}

}  // namespace desiree
