#include "desiree/description.hpp"

#include <algorithm>

namespace desiree {

// ---- values and regions -------------------------------------------------

bool Value::operator==(const Value& o) const {
  if (v.index() != o.v.index()) return false;
  return is_number() ? number() == o.number() : text() == o.text();
}

bool Value::operator<(const Value& o) const {
  if (v.index() != o.v.index()) return v.index() < o.v.index();
  return is_number() ? number() < o.number() : text() < o.text();
}

bool Interval::operator==(const Interval& o) const {
  auto eq = [](const std::optional<Rational>& a, const std::optional<Rational>& b) {
    if (a.has_value() != b.has_value()) return false;
    return !a || *a == *b;
  };
  return eq(low, o.low) && eq(high, o.high) && unit == o.unit;
}

bool Interval::contains(const Rational& x) const {
  if (low && x < *low) return false;
  if (high && x > *high) return false;
  return true;
}

bool Interval::within(const Interval& o) const {
  if (o.low && (!low || *low < *o.low)) return false;
  if (o.high && (!high || *high > *o.high)) return false;
  return true;
}

namespace {

int cmp_opt(const std::optional<Rational>& a, const std::optional<Rational>& b) {
  if (a.has_value() != b.has_value()) return a.has_value() ? 1 : -1;
  if (!a) return 0;
  return cmp(*a, *b) < 0 ? -1 : (*a == *b ? 0 : 1);
}

template <class T>
int cmp3(const T& a, const T& b) {
  return a < b ? -1 : (b < a ? 1 : 0);
}

}  // namespace

int compare(const RegionExpr& a, const RegionExpr& b) {
  if (a.index() != b.index()) return a.index() < b.index() ? -1 : 1;
  if (auto* na = std::get_if<NamedRegion>(&a)) {
    auto& nb = std::get<NamedRegion>(b);
    if (int c = cmp3(na->name, nb.name)) return c;
    return cmp3(na->qualitative, nb.qualitative);
  }
  if (auto* ia = std::get_if<Interval>(&a)) {
    auto& ib = std::get<Interval>(b);
    if (int c = cmp_opt(ia->low, ib.low)) return c;
    if (int c = cmp_opt(ia->high, ib.high)) return c;
    return cmp3(ia->unit, ib.unit);
  }
  auto& va = std::get<ValueSet>(a);
  auto& vb = std::get<ValueSet>(b);
  if (va.values != vb.values) return va.values < vb.values ? -1 : 1;
  return cmp3(va.unit, vb.unit);
}

const std::string& unit_of(const RegionExpr& r) {
  static const std::string none;
  if (auto* i = std::get_if<Interval>(&r)) return i->unit;
  if (auto* v = std::get_if<ValueSet>(&r)) return v->unit;
  return none;
}

// ---- builders -----------------------------------------------------------

namespace {
Description make(decltype(Description::Node::v) v) {
  return Description(std::make_shared<const Description::Node>(Description::Node{std::move(v)}));
}
}  // namespace

Description::Description() : Description(thing()) {}

Description thing() {
  static const Description t(std::make_shared<const Description::Node>(Description::Node{ThingT{}}));
  return t;
}
Description nothing() {
  static const Description n(
      std::make_shared<const Description::Node>(Description::Node{NothingT{}}));
  return n;
}
Description atomic(std::string name) { return make(Atomic{std::move(name)}); }
Description enumeration(std::vector<std::string> ids) { return make(Enumeration{std::move(ids)}); }
Description slot(std::string s, Description filler, Modifier mod) {
  return make(SlotRestriction{std::move(s), mod, std::move(filler)});
}
Description projection(Description source, std::string s) {
  return make(InverseProjection{std::move(source), std::move(s)});
}
Description conj(Description a, Description b) { return make(Intersection{std::move(a), std::move(b)}); }
Description disj(Description a, Description b) { return make(Union{std::move(a), std::move(b)}); }
Description minus(Description a, Description b) { return make(Difference{std::move(a), std::move(b)}); }
Description region(RegionExpr r) { return make(RegionNode{std::move(r)}); }

Description conj_all(const std::vector<Description>& ds) {
  if (ds.empty()) return thing();
  Description acc = ds[0];
  for (size_t i = 1; i < ds.size(); ++i) acc = conj(acc, ds[i]);
  return acc;
}

Description disj_all(const std::vector<Description>& ds) {
  if (ds.empty()) return nothing();
  Description acc = ds[0];
  for (size_t i = 1; i < ds.size(); ++i) acc = disj(acc, ds[i]);
  return acc;
}

// ---- ordering -----------------------------------------------------------

int compare(const Description& a, const Description& b) {
  if (&a.node() == &b.node()) return 0;
  const auto& va = a.node().v;
  const auto& vb = b.node().v;
  if (va.index() != vb.index()) return va.index() < vb.index() ? -1 : 1;
  return std::visit(
      [&](const auto& x) -> int {
        using T = std::decay_t<decltype(x)>;
        const T& y = std::get<T>(vb);
        if constexpr (std::is_same_v<T, Atomic>) {
          return cmp3(x.name, y.name);
        } else if constexpr (std::is_same_v<T, Enumeration>) {
          return cmp3(x.ids, y.ids);
        } else if constexpr (std::is_same_v<T, SlotRestriction>) {
          if (int c = cmp3(x.slot, y.slot)) return c;
          if (int c = cmp3(static_cast<int>(x.mod.kind), static_cast<int>(y.mod.kind))) return c;
          if (!(x.mod == y.mod)) return cmp3(x.mod.n, y.mod.n);
          return compare(x.filler, y.filler);
        } else if constexpr (std::is_same_v<T, InverseProjection>) {
          if (int c = cmp3(x.slot, y.slot)) return c;
          return compare(x.source, y.source);
        } else if constexpr (std::is_same_v<T, Intersection> || std::is_same_v<T, Union> ||
                             std::is_same_v<T, Difference>) {
          if (int c = compare(x.left, y.left)) return c;
          return compare(x.right, y.right);
        } else if constexpr (std::is_same_v<T, RegionNode>) {
          return compare(x.region, y.region);
        } else {
          return 0;
        }
      },
      va);
}

bool Description::operator==(const Description& o) const { return compare(*this, o) == 0; }
bool Description::operator<(const Description& o) const { return compare(*this, o) < 0; }

std::vector<Description> conjuncts(const Description& d) {
  std::vector<Description> out;
  std::function<void(const Description&)> go = [&](const Description& x) {
    if (auto* i = x.as<Intersection>()) {
      go(i->left);
      go(i->right);
    } else {
      out.push_back(x);
    }
  };
  go(d);
  return out;
}

std::vector<Description> disjuncts(const Description& d) {
  std::vector<Description> out;
  std::function<void(const Description&)> go = [&](const Description& x) {
    if (auto* u = x.as<Union>()) {
      go(u->left);
      go(u->right);
    } else {
      out.push_back(x);
    }
  };
  go(d);
  return out;
}

// ---- normalization ------------------------------------------------------

namespace {

// Thing − x
bool is_negation(const Description& d, Description* inner = nullptr) {
  auto* df = d.as<Difference>();
  if (!df || !df->left.is<ThingT>()) return false;
  if (inner) *inner = df->right;
  return true;
}

Description negate(const Description& nd) {
  if (nd.is<ThingT>()) return nothing();
  if (nd.is<NothingT>()) return thing();
  Description inner;
  if (is_negation(nd, &inner)) return inner;
  return minus(thing(), nd);
}

void sort_unique(std::vector<Description>& v) {
  std::sort(v.begin(), v.end(), [](const Description& a, const Description& b) { return compare(a, b) < 0; });
  v.erase(std::unique(v.begin(), v.end()), v.end());
}

bool has_complementary_pair(const std::vector<Description>& ops) {
  for (const auto& o : ops) {
    Description inner;
    if (is_negation(o, &inner) && std::binary_search(ops.begin(), ops.end(), inner,
                                                     [](const Description& a, const Description& b) {
                                                       return compare(a, b) < 0;
                                                     }))
      return true;
  }
  return false;
}

Description normalize_conj(const std::vector<Description>& raw) {
  std::vector<Description> ops;
  for (const auto& r : raw) {
    Description n = normalize(r);
    if (n.is<NothingT>()) return nothing();
    for (auto& c : conjuncts(n))
      if (!c.is<ThingT>()) ops.push_back(c);
  }
  sort_unique(ops);
  if (has_complementary_pair(ops)) return nothing();
  return conj_all(ops);
}

Description normalize_disj(const std::vector<Description>& raw) {
  std::vector<Description> ops;
  for (const auto& r : raw) {
    Description n = normalize(r);
    if (n.is<ThingT>()) return thing();
    for (auto& c : disjuncts(n))
      if (!c.is<NothingT>()) ops.push_back(c);
  }
  sort_unique(ops);
  if (has_complementary_pair(ops)) return thing();
  return disj_all(ops);
}

}  // namespace

Description normalize(const Description& d) {
  return std::visit(
      [&](const auto& x) -> Description {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, Enumeration>) {
          auto ids = x.ids;
          std::sort(ids.begin(), ids.end());
          ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
          return enumeration(std::move(ids));
        } else if constexpr (std::is_same_v<T, SlotRestriction>) {
          return slot(x.slot, normalize(x.filler), x.mod);
        } else if constexpr (std::is_same_v<T, InverseProjection>) {
          Description src = normalize(x.source);
          if (src.is<NothingT>()) return nothing();
          return projection(src, x.slot);
        } else if constexpr (std::is_same_v<T, Intersection>) {
          return normalize_conj({x.left, x.right});
        } else if constexpr (std::is_same_v<T, Union>) {
          return normalize_disj({x.left, x.right});
        } else if constexpr (std::is_same_v<T, Difference>) {
          Description l = normalize(x.left);
          Description r = normalize(x.right);
          if (l.is<ThingT>()) return negate(r);
          return normalize_conj({l, negate(r)});
        } else {
          return d;
        }
      },
      d.node().v);
}

void visit(const Description& d, const std::function<void(const Description&)>& fn) {
  fn(d);
  std::visit(
      [&](const auto& x) {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, SlotRestriction>) {
          visit(x.filler, fn);
        } else if constexpr (std::is_same_v<T, InverseProjection>) {
          visit(x.source, fn);
        } else if constexpr (std::is_same_v<T, Intersection> || std::is_same_v<T, Union> ||
                             std::is_same_v<T, Difference>) {
          visit(x.left, fn);
          visit(x.right, fn);
        }
      },
      d.node().v);
}

bool mentions_region(const Description& d) {
  bool found = false;
  visit(d, [&](const Description& x) {
    if (x.is<RegionNode>()) found = true;
  });
  return found;
}

bool is_pure_region(const Description& d) {
  if (d.is<RegionNode>() || d.is<ThingT>() || d.is<NothingT>()) return true;
  if (auto* i = d.as<Intersection>()) return is_pure_region(i->left) && is_pure_region(i->right);
  if (auto* u = d.as<Union>()) return is_pure_region(u->left) && is_pure_region(u->right);
  if (auto* df = d.as<Difference>()) return is_pure_region(df->left) && is_pure_region(df->right);
  return false;
}

}  // namespace desiree
