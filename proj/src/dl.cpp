#include "desiree/dl.hpp"

#include "desiree/parser.hpp"

#include <algorithm>
#include <sstream>

namespace desiree {

namespace {
DLConcept mk(decltype(DLConcept::Node::v) v) {
  return DLConcept(std::make_shared<const DLConcept::Node>(DLConcept::Node{std::move(v)}));
}

template <class T>
int cmp3(const T& a, const T& b) {
  return a < b ? -1 : (b < a ? 1 : 0);
}

int cmp_role(const Role& a, const Role& b) {
  if (int c = cmp3(a.name, b.name)) return c;
  return cmp3(a.inverse, b.inverse);
}

int cmp_vec(const std::vector<DLConcept>& a, const std::vector<DLConcept>& b) {
  for (size_t i = 0; i < std::min(a.size(), b.size()); ++i)
    if (int c = compare(a[i], b[i])) return c;
  return cmp3(a.size(), b.size());
}
}  // namespace

DLConcept::DLConcept() : DLConcept(dl::top()) {}

namespace dl {
DLConcept top() {
  static const DLConcept t(std::make_shared<const DLConcept::Node>(DLConcept::Node{DTop{}}));
  return t;
}
DLConcept bottom() {
  static const DLConcept b(std::make_shared<const DLConcept::Node>(DLConcept::Node{DBottom{}}));
  return b;
}
DLConcept named(std::string n) { return mk(DNamed{std::move(n)}); }
DLConcept nominal(std::vector<std::string> ids) { return mk(DNominal{std::move(ids)}); }
DLConcept and_(std::vector<DLConcept> ops) { return mk(DAnd{std::move(ops)}); }
DLConcept or_(std::vector<DLConcept> ops) { return mk(DOr{std::move(ops)}); }
DLConcept not_(DLConcept c) { return mk(DNot{std::move(c)}); }
DLConcept exists(Role r, DLConcept f) { return mk(DExists{std::move(r), std::move(f)}); }
DLConcept forall(Role r, DLConcept f) { return mk(DForall{std::move(r), std::move(f)}); }
DLConcept card(CardKind k, unsigned n, Role r, DLConcept f) { return mk(DCard{k, n, std::move(r), std::move(f)}); }
DLConcept data(RegionExpr r) { return mk(DData{std::move(r)}); }
}  // namespace dl

int compare(const DLConcept& a, const DLConcept& b) {
  if (&a.node() == &b.node()) return 0;
  const auto& va = a.node().v;
  const auto& vb = b.node().v;
  if (va.index() != vb.index()) return va.index() < vb.index() ? -1 : 1;
  return std::visit(
      [&](const auto& x) -> int {
        using T = std::decay_t<decltype(x)>;
        const T& y = std::get<T>(vb);
        if constexpr (std::is_same_v<T, DNamed>) return cmp3(x.name, y.name);
        else if constexpr (std::is_same_v<T, DNominal>) return cmp3(x.ids, y.ids);
        else if constexpr (std::is_same_v<T, DAnd> || std::is_same_v<T, DOr>) return cmp_vec(x.ops, y.ops);
        else if constexpr (std::is_same_v<T, DNot>) return compare(x.c, y.c);
        else if constexpr (std::is_same_v<T, DExists> || std::is_same_v<T, DForall>) {
          if (int c = cmp_role(x.role, y.role)) return c;
          return compare(x.filler, y.filler);
        } else if constexpr (std::is_same_v<T, DCard>) {
          if (int c = cmp3(static_cast<int>(x.kind), static_cast<int>(y.kind))) return c;
          if (int c = cmp3(x.n, y.n)) return c;
          if (int c = cmp_role(x.role, y.role)) return c;
          return compare(x.filler, y.filler);
        } else if constexpr (std::is_same_v<T, DData>) {
          return compare(x.range, y.range);
        } else {
          return 0;
        }
      },
      va);
}

bool DLConcept::operator==(const DLConcept& o) const { return compare(*this, o) == 0; }
bool DLConcept::operator<(const DLConcept& o) const { return compare(*this, o) < 0; }

bool is_data_concept(const DLConcept& c) {
  if (c.is<DData>()) return true;
  if (auto* a = c.as<DAnd>()) {
    bool any = false;
    for (const auto& o : a->ops) {
      if (is_data_concept(o)) any = true;
      else if (!o.is<DTop>() && !o.is<DBottom>()) return false;
    }
    return any;
  }
  if (auto* o = c.as<DOr>()) {
    bool any = false;
    for (const auto& x : o->ops) {
      if (is_data_concept(x)) any = true;
      else if (!x.is<DTop>() && !x.is<DBottom>()) return false;
    }
    return any;
  }
  if (auto* n = c.as<DNot>()) return is_data_concept(n->c);
  return false;
}

namespace {

std::string role_text(const Role& r) { return r.inverse ? r.name + "⁻" : r.name; }

int dl_prec(const DLConcept& c) {
  if (c.is<DOr>()) return 1;
  if (c.is<DAnd>()) return 2;
  return 3;
}

void print(std::ostream& os, const DLConcept& c, int ctx) {
  bool paren = dl_prec(c) < ctx;
  if (paren) os << "(";
  std::visit(
      [&](const auto& x) {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, DTop>) os << "⊤";
        else if constexpr (std::is_same_v<T, DBottom>) os << "⊥";
        else if constexpr (std::is_same_v<T, DNamed>) os << x.name;
        else if constexpr (std::is_same_v<T, DNominal>) {
          os << "{";
          for (size_t i = 0; i < x.ids.size(); ++i) os << (i ? ", " : "") << x.ids[i];
          os << "}";
        } else if constexpr (std::is_same_v<T, DAnd> || std::is_same_v<T, DOr>) {
          const char* sep = std::is_same_v<T, DAnd> ? " ⊓ " : " ⊔ ";
          int inner = std::is_same_v<T, DAnd> ? 3 : 2;
          for (size_t i = 0; i < x.ops.size(); ++i) {
            if (i) os << sep;
            print(os, x.ops[i], inner);
          }
        } else if constexpr (std::is_same_v<T, DNot>) {
          os << "¬";
          print(os, x.c, 3);
        } else if constexpr (std::is_same_v<T, DExists> || std::is_same_v<T, DForall>) {
          os << (std::is_same_v<T, DExists> ? "∃" : "∀") << role_text(x.role) << ".";
          print(os, x.filler, 3);
        } else if constexpr (std::is_same_v<T, DCard>) {
          os << (x.kind == CardKind::Min ? "≥" : x.kind == CardKind::Max ? "≤" : "=") << x.n << " "
             << role_text(x.role) << ".";
          print(os, x.filler, 3);
        } else if constexpr (std::is_same_v<T, DData>) {
          if (auto* iv = std::get_if<Interval>(&x.range); iv && (iv->low || iv->high)) {
            // facet form: ((≥0) ⊓ (≤30))
            std::string u = iv->unit.empty() ? "" : " " + iv->unit;
            std::string lo = iv->low ? "(≥" + to_string(*iv->low) + u + ")" : "";
            std::string hi = iv->high ? "(≤" + to_string(*iv->high) + u + ")" : "";
            if (!lo.empty() && !hi.empty()) os << "(" << lo << " ⊓ " << hi << ")";
            else os << lo << hi;
          } else {
            os << print_region(x.range);
          }
        }
      },
      c.node().v);
  if (paren) os << ")";
}

void sort_unique(std::vector<DLConcept>& v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
}

}  // namespace

std::string to_text(const DLConcept& c) {
  std::ostringstream os;
  print(os, c, 0);
  return os.str();
}

std::string to_text(const DLAxiom& a) {
  if (a.kind == DLAxiom::Kind::Disjoint) return "Disjoint(" + to_text(a.a) + ", " + to_text(a.b) + ")";
  return to_text(a.a) + " ⊑ " + to_text(a.b);
}

DLConcept simplify(const DLConcept& c) {
  return std::visit(
      [&](const auto& x) -> DLConcept {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, DAnd>) {
          std::vector<DLConcept> ops;
          for (const auto& o : x.ops) {
            DLConcept s = simplify(o);
            if (s.is<DBottom>()) return dl::bottom();
            if (s.is<DTop>()) continue;
            if (auto* inner = s.as<DAnd>()) ops.insert(ops.end(), inner->ops.begin(), inner->ops.end());
            else ops.push_back(s);
          }
          sort_unique(ops);
          if (ops.empty()) return dl::top();
          if (ops.size() == 1) return ops[0];
          return dl::and_(std::move(ops));
        } else if constexpr (std::is_same_v<T, DOr>) {
          std::vector<DLConcept> ops;
          for (const auto& o : x.ops) {
            DLConcept s = simplify(o);
            if (s.is<DTop>()) return dl::top();
            if (s.is<DBottom>()) continue;
            if (auto* inner = s.as<DOr>()) ops.insert(ops.end(), inner->ops.begin(), inner->ops.end());
            else ops.push_back(s);
          }
          sort_unique(ops);
          if (ops.empty()) return dl::bottom();
          if (ops.size() == 1) return ops[0];
          return dl::or_(std::move(ops));
        } else if constexpr (std::is_same_v<T, DNot>) {
          DLConcept s = simplify(x.c);
          if (s.is<DTop>()) return dl::bottom();
          if (s.is<DBottom>()) return dl::top();
          if (auto* n = s.as<DNot>()) return n->c;
          return dl::not_(s);
        } else if constexpr (std::is_same_v<T, DExists>) {
          return dl::exists(x.role, simplify(x.filler));
        } else if constexpr (std::is_same_v<T, DForall>) {
          return dl::forall(x.role, simplify(x.filler));
        } else if constexpr (std::is_same_v<T, DCard>) {
          return dl::card(x.kind, x.n, x.role, simplify(x.filler));
        } else if constexpr (std::is_same_v<T, DNominal>) {
          auto ids = x.ids;
          std::sort(ids.begin(), ids.end());
          ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
          return dl::nominal(std::move(ids));
        } else {
          return c;
        }
      },
      c.node().v);
}

}  // namespace desiree
