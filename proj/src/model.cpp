#include "desiree/model.hpp"

#include "desiree/error.hpp"

#include <algorithm>
#include <functional>

namespace desiree {

const char* to_string(ErrorCode c) {
  switch (c) {
    case ErrorCode::Usage: return "Usage";
    case ErrorCode::Io: return "Io";
    case ErrorCode::Parse: return "Parse";
    case ErrorCode::Invalid: return "Invalid";
    case ErrorCode::UnknownElement: return "UnknownElement";
    case ErrorCode::Signature: return "Signature";
    case ErrorCode::PathMismatch: return "PathMismatch";
    case ErrorCode::AlreadyUniversalized: return "AlreadyUniversalized";
    case ErrorCode::InvalidFactor: return "InvalidFactor";
    case ErrorCode::NoOrderingAxiom: return "NoOrderingAxiom";
    case ErrorCode::NotAConflict: return "NotAConflict";
    case ErrorCode::NotAQuality: return "NotAQuality";
    case ErrorCode::UnknownRegion: return "UnknownRegion";
    case ErrorCode::RegionMismatch: return "RegionMismatch";
    case ErrorCode::UnsupportedNestedU: return "UnsupportedNestedU";
    case ErrorCode::NestedUNotExportable: return "NestedUNotExportable";
    case ErrorCode::TooManyCompletions: return "TooManyCompletions";
  }
  return "?";
}

const char* to_string(ElementKind k) {
  switch (k) {
    case ElementKind::Goal: return "Goal";
    case ElementKind::FG: return "FG";
    case ElementKind::F: return "F";
    case ElementKind::FC: return "FC";
    case ElementKind::QG: return "QG";
    case ElementKind::QC: return "QC";
    case ElementKind::CTG: return "CTG";
    case ElementKind::SC: return "SC";
    case ElementKind::DA: return "DA";
  }
  return "?";
}

const char* keyword(ElementKind k) {
  switch (k) {
    case ElementKind::Goal: return "goal";
    case ElementKind::FG: return "fg";
    case ElementKind::F: return "func";
    case ElementKind::FC: return "fc";
    case ElementKind::QG: return "qg";
    case ElementKind::QC: return "qc";
    case ElementKind::CTG: return "ctg";
    case ElementKind::SC: return "sc";
    case ElementKind::DA: return "da";
  }
  return "?";
}

std::optional<ElementKind> kind_from_keyword(std::string_view kw) {
  for (auto k : {ElementKind::Goal, ElementKind::FG, ElementKind::F, ElementKind::FC, ElementKind::QG,
                 ElementKind::QC, ElementKind::CTG, ElementKind::SC, ElementKind::DA})
    if (kw == keyword(k)) return k;
  return std::nullopt;
}

bool is_specification(ElementKind k) {
  return k == ElementKind::F || k == ElementKind::FC || k == ElementKind::QC || k == ElementKind::SC;
}

bool is_quality_kind(ElementKind k) { return k == ElementKind::QG || k == ElementKind::QC; }

const char* to_string(OperatorKind k) {
  switch (k) {
    case OperatorKind::Reduce: return "Reduce";
    case OperatorKind::Interpret: return "Interpret";
    case OperatorKind::Focus: return "Focus";
    case OperatorKind::Scale: return "Scale";
    case OperatorKind::DeUniversalize: return "DeUniversalize";
    case OperatorKind::Resolve: return "Resolve";
    case OperatorKind::Operationalize: return "Operationalize";
    case OperatorKind::Observe: return "Observe";
  }
  return "?";
}

const char* to_string(Strength s) {
  switch (s) {
    case Strength::Strengthening: return "Strengthening";
    case Strength::Weakening: return "Weakening";
    case Strength::Equating: return "Equating";
  }
  return "?";
}

bool ScaleArgs::operator==(const ScaleArgs& o) const {
  if (direction != o.direction || factor.has_value() != o.factor.has_value()) return false;
  if (!factor) return true;
  if (factor->index() != o.factor->index()) return false;
  if (auto* p = std::get_if<0>(&*factor)) {
    auto& q = std::get<0>(*o.factor);
    return p->first == q.first && p->second == q.second;
  }
  return std::get<1>(*factor) == std::get<1>(*o.factor);
}

const SlotRestriction* FunctionDesc::find(const std::string& s) const {
  for (const auto& sl : slots)
    if (sl.slot == s) return &sl;
  return nullptr;
}

bool Model::operator==(const Model& o) const {
  return name == o.name && elements == o.elements && applications == o.applications &&
         conflicts == o.conflicts && fulfilled_marks == o.fulfilled_marks && axioms == o.axioms &&
         world == o.world && quality_spaces == o.quality_spaces;
}

const Element* Model::find(const std::string& id) const {
  for (const auto& e : elements)
    if (e.id == id) return &e;
  return nullptr;
}

Element* Model::find(const std::string& id) {
  for (auto& e : elements)
    if (e.id == id) return &e;
  return nullptr;
}

const QualitySpace* Model::space(const std::string& quality) const {
  for (const auto& s : quality_spaces)
    if (s.quality == quality) return &s;
  return nullptr;
}

std::set<std::string> Model::dropped() const {
  std::set<std::string> out;
  for (const auto& a : applications) {
    if (a.op != OperatorKind::Resolve) continue;
    for (const auto& in : a.inputs)
      if (std::find(a.outputs.begin(), a.outputs.end(), in) == a.outputs.end()) out.insert(in);
  }
  return out;
}

std::vector<const OperatorApplication*> Model::applications_from(const std::string& id) const {
  std::vector<const OperatorApplication*> out;
  for (const auto& a : applications)
    if (std::find(a.inputs.begin(), a.inputs.end(), id) != a.inputs.end()) out.push_back(&a);
  return out;
}

bool is_reserved_slot(const std::string& s) {
  static const std::set<std::string> reserved = {
      "pct", "subsumee", "subsumer", "inheres_in", "has_value_in", "observed_by",
      "relate_to", "relate_to_one", "relate_to_many", "reduce_to", "interpret_to", "focus_to",
      "scale_to", "deuniversalize_to", "resolve_to", "operationalize_to", "observe_to"};
  return reserved.count(s) > 0;
}

namespace {

void for_each_description(const Model& m,
                          const std::function<void(const Description&, const std::string&)>& fn) {
  for (const auto& e : m.elements) {
    std::visit(
        [&](const auto& b) {
          using T = std::decay_t<decltype(b)>;
          if constexpr (std::is_same_v<T, FunctionDesc>) {
            for (const auto& s : b.slots) fn(slot(s.slot, s.filler, s.mod), e.id);
          } else if constexpr (std::is_same_v<T, QualityStatement>) {
            fn(b.quality, e.id);
            fn(b.subject, e.id);
            for (const auto& o : b.observers) fn(o, e.id);
          } else if constexpr (std::is_same_v<T, Subsumption>) {
            fn(b.sub, e.id);
            fn(b.sup, e.id);
          }
        },
        e.body);
  }
  for (const auto& ax : m.axioms) {
    fn(ax.sub, "");
    fn(ax.sup, "");
  }
  for (const auto& a : m.applications) {
    if (auto* f = std::get_if<FocusArgs>(&a.args))
      for (const auto& t : f->targets) fn(t, "");
    if (auto* d = std::get_if<Description>(&a.args)) fn(*d, "");
  }
}

enum class Sort { Neutral, Region, Concept, Mixed };

Sort sort_of(const Description& d) {
  if (d.is<ThingT>() || d.is<NothingT>()) return Sort::Neutral;
  if (d.is<RegionNode>()) return Sort::Region;
  auto combine = [](Sort a, Sort b) {
    if (a == Sort::Mixed || b == Sort::Mixed) return Sort::Mixed;
    if (a == Sort::Neutral) return b;
    if (b == Sort::Neutral) return a;
    return a == b ? a : Sort::Mixed;
  };
  if (auto* i = d.as<Intersection>()) return combine(sort_of(i->left), sort_of(i->right));
  if (auto* u = d.as<Union>()) return combine(sort_of(u->left), sort_of(u->right));
  if (auto* df = d.as<Difference>()) return combine(sort_of(df->left), sort_of(df->right));
  return Sort::Concept;
}

void check_region(const RegionExpr& r, const std::string& id, std::vector<Diagnostic>& out) {
  if (auto* iv = std::get_if<Interval>(&r)) {
    if (iv->low && iv->high && *iv->low > *iv->high)
      out.push_back({Severity::Error, "interval-bounds", id, "interval low bound exceeds high bound"});
  } else if (auto* vs = std::get_if<ValueSet>(&r)) {
    if (vs->values.empty()) out.push_back({Severity::Error, "empty-value-set", id, "empty value set"});
  }
}

void check_description(const Description& d, const std::string& id, std::vector<Diagnostic>& out) {
  visit(d, [&](const Description& x) {
    if (auto* en = x.as<Enumeration>()) {
      auto ids = en->ids;
      std::sort(ids.begin(), ids.end());
      if (ids.empty())
        out.push_back({Severity::Error, "empty-enumeration", id, "enumeration must not be empty"});
      else if (std::adjacent_find(ids.begin(), ids.end()) != ids.end())
        out.push_back({Severity::Error, "duplicate-individual", id, "enumeration lists an individual twice"});
    } else if (auto* s = x.as<SlotRestriction>()) {
      bool counted = s->mod.kind == ModKind::AtMost || s->mod.kind == ModKind::AtLeast ||
                     s->mod.kind == ModKind::Exactly;
      if (counted && s->mod.n < 1)
        out.push_back({Severity::Error, "cardinality", id, "cardinality must be at least 1"});
      if (is_reserved_slot(s->slot))
        out.push_back({Severity::Error, "reserved-slot", id, "slot '" + s->slot + "' is reserved"});
    } else if (auto* p = x.as<InverseProjection>()) {
      if (is_reserved_slot(p->slot) && p->slot != "inheres_in")
        out.push_back({Severity::Error, "reserved-slot", id, "slot '" + p->slot + "' is reserved"});
    } else if (auto* r = x.as<RegionNode>()) {
      check_region(r->region, id, out);
    } else if (x.is<Intersection>() || x.is<Union>() || x.is<Difference>()) {
      if (sort_of(x) == Sort::Mixed)
        out.push_back({Severity::Error, "region-mix", id, "regions combine only with regions"});
    }
  });
}

bool body_fits(ElementKind k, const Body& b) {
  if (std::holds_alternative<NLText>(b) || k == ElementKind::Goal) return true;
  switch (k) {
    case ElementKind::F: return std::holds_alternative<FunctionDesc>(b);
    case ElementKind::QG:
    case ElementKind::QC: return std::holds_alternative<QualityStatement>(b);
    default: return std::holds_alternative<Subsumption>(b);
  }
}

}  // namespace

std::vector<ElementKind> output_kinds(OperatorKind op, ElementKind in) {
  using K = ElementKind;
  switch (op) {
    case OperatorKind::Reduce:
      if (in == K::DA) return {};
      return {in, K::DA};
    case OperatorKind::Interpret:
      if (in == K::Goal) return {K::Goal, K::FG, K::F, K::FC, K::QG, K::QC, K::CTG, K::SC, K::DA};
      return {in};
    case OperatorKind::Focus:
    case OperatorKind::Scale:
    case OperatorKind::DeUniversalize:
      if (!is_quality_kind(in)) return {};
      return {in};
    case OperatorKind::Observe:
      if (!is_quality_kind(in)) return {};
      return {K::QC};
    case OperatorKind::Operationalize:
      switch (in) {
        case K::FG: return {K::F, K::FC, K::DA};
        case K::QG: return {K::QC, K::F, K::FC, K::DA};
        case K::CTG: return {K::SC, K::DA};
        case K::Goal: return {K::DA};
        default: return {};
      }
    case OperatorKind::Resolve:
      return {K::Goal, K::FG, K::F, K::FC, K::QG, K::QC, K::CTG, K::SC, K::DA};
  }
  return {};
}


std::vector<Diagnostic> validate_model(const Model& m) {
  std::vector<Diagnostic> out;
  auto err = [&](std::string code, std::string id, std::string msg) {
    out.push_back({Severity::Error, std::move(code), std::move(id), std::move(msg)});
  };

  std::set<std::string> ids;
  for (const auto& e : m.elements) {
    if (!ids.insert(e.id).second) err("duplicate-id", e.id, "duplicate element id '" + e.id + "'");
    if (!body_fits(e.kind, e.body))
      err("kind-body", e.id, std::string("body does not fit kind ") + to_string(e.kind));
    if (auto* q = e.quality()) {
      for (const auto& d : disjuncts(q->quality))
        if (!d.is<Atomic>()) err("quality-name", e.id, "quality position must name qualities");
      if (e.kind == ElementKind::QC) {
        auto* nr = std::get_if<NamedRegion>(&q->region);
        // an observer (e.g. surveyed users) makes a qualitative region measurable
        if (nr && nr->qualitative && q->observers.empty())
          err("qc-region", e.id, "a QC needs a measurable region or an observer, not qualitative '" + nr->name + "'");
      }
      check_region(q->region, e.id, out);
      std::set<std::vector<std::string>> paths;
      for (const auto& u : q->annotations) {
        if (u.pct_low <= 0 || u.pct_low > 1) err("u-pct", e.id, "percentage must lie in (0, 100%]");
        if (u.path.empty() || (u.path[0] != "inheres_in" && u.path[0] != "observed_by"))
          err("u-path", e.id, "U path must start at inheres_in or observed_by");
        else if (u.path[0] == "observed_by" && (q->observers.empty() || u.path.size() != 1))
          err("u-path", e.id, "U over observed_by needs an observer");
        if (!paths.insert(u.path).second) err("u-path", e.id, "U applied twice on the same path");
      }
    }
  }

  for (const auto& e : m.elements) {
    std::visit(
        [&](const auto& b) {
          using T = std::decay_t<decltype(b)>;
          if constexpr (std::is_same_v<T, FunctionDesc>) {
            for (const auto& s : b.slots) check_description(slot(s.slot, s.filler, s.mod), e.id, out);
          } else if constexpr (std::is_same_v<T, QualityStatement>) {
            check_description(b.quality, e.id, out);
            check_description(b.subject, e.id, out);
            for (const auto& o : b.observers) check_description(o, e.id, out);
          } else if constexpr (std::is_same_v<T, Subsumption>) {
            check_description(b.sub, e.id, out);
            check_description(b.sup, e.id, out);
          }
        },
        e.body);
  }
  for (const auto& ax : m.axioms) {
    check_description(ax.sub, "", out);
    check_description(ax.sup, "", out);
  }

  auto known = [&](const std::string& id, const char* where) {
    if (!ids.count(id)) {
      err("dangling-reference", id, std::string("unknown element '") + id + "' in " + where);
      return false;
    }
    return true;
  };

  std::set<std::set<std::string>> conflict_sets;
  for (const auto& c : m.conflicts) {
    if (c.size() < 2) err("conflict-size", "", "a conflict needs at least two elements");
    for (const auto& id : c) known(id, "conflict");
    conflict_sets.insert(std::set<std::string>(c.begin(), c.end()));
  }

  for (const auto& a : m.applications) {
    bool ok = true;
    for (const auto& id : a.inputs) ok = known(id, to_string(a.op)) && ok;
    for (const auto& id : a.outputs) ok = known(id, to_string(a.op)) && ok;
    std::string who = a.inputs.empty() ? "" : a.inputs.front();
    if (a.op == OperatorKind::Resolve) {
      if (a.inputs.size() < 2) err("arity", who, "Resolve takes at least two inputs");
      if (!conflict_sets.count(std::set<std::string>(a.inputs.begin(), a.inputs.end())))
        err("not-a-conflict", who, "Resolve inputs are not a declared conflict");
      continue;
    }
    if (a.inputs.size() != 1) {
      err("arity", who, std::string(to_string(a.op)) + " takes exactly one input");
      continue;
    }
    bool single = a.op == OperatorKind::Interpret || a.op == OperatorKind::Scale ||
                  a.op == OperatorKind::DeUniversalize || a.op == OperatorKind::Observe;
    if (single && a.outputs.size() != 1)
      err("arity", who, std::string(to_string(a.op)) + " produces exactly one output");
    if (!single && a.outputs.empty())
      err("arity", who, std::string(to_string(a.op)) + " produces at least one output");
    if (a.op == OperatorKind::Scale && !std::holds_alternative<ScaleArgs>(a.args))
      err("arity", who, "Scale needs a direction");
    if (!ok) continue;
    const Element* in = m.find(a.inputs[0]);
    auto allowed = output_kinds(a.op, in->kind);
    if (allowed.empty()) {
      err("signature", in->id,
          std::string(to_string(a.op)) + " does not apply to a " + to_string(in->kind));
      continue;
    }
    for (const auto& oid : a.outputs) {
      const Element* o = m.find(oid);
      if (std::find(allowed.begin(), allowed.end(), o->kind) == allowed.end())
        err("signature", oid,
            std::string(to_string(a.op)) + " cannot turn a " + to_string(in->kind) + " into a " +
                to_string(o->kind));
    }
  }

  auto dropped = m.dropped();
  for (const auto& id : m.fulfilled_marks) {
    if (!known(id, "fulfilled marks")) continue;
    if (dropped.count(id)) err("dropped-fulfilled", id, "'" + id + "' was dropped by Resolve");
    const Element* e = m.find(id);
    if (!is_specification(e->kind) && e->kind != ElementKind::DA)
      out.push_back({Severity::Warning, "mark-kind", id, "marked element is not a specification"});
  }

  // acyclicity of the refinement graph
  std::map<std::string, std::vector<std::string>> edges;
  for (const auto& a : m.applications)
    for (const auto& i : a.inputs)
      for (const auto& o : a.outputs)
        if (i != o) edges[i].push_back(o);
  std::map<std::string, int> state;
  bool cyclic = false;
  std::function<void(const std::string&)> dfs = [&](const std::string& v) {
    state[v] = 1;
    for (const auto& w : edges[v]) {
      if (state[w] == 1) cyclic = true;
      else if (state[w] == 0) dfs(w);
    }
    state[v] = 2;
  };
  for (const auto& [v, _] : edges)
    if (state[v] == 0) dfs(v);
  if (cyclic) err("cycle", "", "operator applications form a cycle");

  for (const auto& qs : m.quality_spaces) {
    std::set<std::string> names;
    for (const auto& r : qs.regions) {
      if (!names.insert(r.name).second) err("region-name", "", "duplicate region '" + r.name + "'");
      if (r.is_interval && r.low > r.high) err("interval-bounds", "", "region '" + r.name + "' is empty");
      if (!r.is_interval && r.points.empty()) err("region-points", "", "region '" + r.name + "' has no points");
    }
  }
  return out;
}

Symbols free_symbols(const Model& m) {
  Symbols s;
  auto walk = [&](const Description& d) {
    visit(d, [&](const Description& x) {
      if (auto* a = x.as<Atomic>()) s.concepts.insert(a->name);
      else if (auto* en = x.as<Enumeration>()) s.individuals.insert(en->ids.begin(), en->ids.end());
      else if (auto* sl = x.as<SlotRestriction>()) s.slots.insert(sl->slot);
      else if (auto* p = x.as<InverseProjection>()) s.slots.insert(p->slot);
      else if (auto* r = x.as<RegionNode>()) {
        if (auto* nr = std::get_if<NamedRegion>(&r->region)) s.regions.insert(nr->name);
      }
    });
  };
  for_each_description(m, [&](const Description& d, const std::string&) { walk(d); });
  for (const auto& e : m.elements) {
    if (auto* f = e.function()) s.concepts.insert(f->head);
    if (auto* q = e.quality())
      if (auto* nr = std::get_if<NamedRegion>(&q->region)) s.regions.insert(nr->name);
  }
  return s;
}

}  // namespace desiree
