#include "desiree/export.hpp"

#include "desiree/error.hpp"
#include "desiree/parser.hpp"
#include "desiree/semantics.hpp"

#include <json.hpp>

#include <algorithm>
#include <set>
#include <sstream>

namespace desiree {

namespace {

using json = nlohmann::ordered_json;

std::string iri(const std::string& name) { return ":" + name; }

std::string quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

bool terminates(const Rational& r) { return to_string(r).find('/') == std::string::npos; }

std::string number_literal(const Rational& r) {
  return terminates(r) ? quote(to_string(r)) + "^^xsd:decimal" : quote(to_string(r)) + "^^owl:rational";
}

const char* op_property(OperatorKind k) {
  switch (k) {
    case OperatorKind::Reduce: return "reduce_to";
    case OperatorKind::Interpret: return "interpret_to";
    case OperatorKind::Focus: return "focus_to";
    case OperatorKind::Scale: return "scale_to";
    case OperatorKind::DeUniversalize: return "deuniversalize_to";
    case OperatorKind::Operationalize: return "operationalize_to";
    case OperatorKind::Observe: return "observe_to";
    case OperatorKind::Resolve: return nullptr;
  }
  return nullptr;
}

bool one_to_many(OperatorKind k) {
  return k == OperatorKind::Reduce || k == OperatorKind::Focus || k == OperatorKind::Operationalize;
}

class OwlWriter {
 public:
  std::set<std::string> classes, object_props, data_props, datatypes, individuals;

  std::string cls(const std::string& n) {
    classes.insert(n);
    return iri(n);
  }

  std::string concept_of(const DLConcept& c) {
    return std::visit([&](const auto& x) { return render(x); }, c.node().v);
  }

  std::string range(const DLConcept& c) {
    if (c.is<DTop>()) return "rdfs:Literal";
    if (c.is<DBottom>()) return "DataComplementOf(rdfs:Literal)";
    if (auto* d = c.as<DData>()) return region(d->range);
    if (auto* a = c.as<DAnd>()) return nary("DataIntersectionOf", a->ops, true);
    if (auto* o = c.as<DOr>()) return nary("DataUnionOf", o->ops, true);
    if (auto* n = c.as<DNot>()) return "DataComplementOf(" + range(n->c) + ")";
    throw Error(ErrorCode::Invalid, "not a data range: " + to_text(c));
  }

 private:
  std::string nary(const char* f, const std::vector<DLConcept>& ops, bool data) {
    if (ops.size() == 1) return data ? range(ops[0]) : concept_of(ops[0]);
    std::string s = std::string(f) + "(";
    for (size_t i = 0; i < ops.size(); ++i) s += (i ? " " : "") + (data ? range(ops[i]) : concept_of(ops[i]));
    return s + ")";
  }

  std::string object_role(const Role& r) {
    object_props.insert(r.name);
    return r.inverse ? "ObjectInverseOf(" + iri(r.name) + ")" : iri(r.name);
  }

  std::string data_role(const Role& r) {
    if (r.inverse) throw Error(ErrorCode::Invalid, "inverse of data slot " + r.name + " has no OWL form");
    data_props.insert(r.name);
    return iri(r.name);
  }

  std::string region(const RegionExpr& re) {
    if (auto* n = std::get_if<NamedRegion>(&re)) {
      datatypes.insert(n->name);
      return iri(n->name);
    }
    if (auto* iv = std::get_if<Interval>(&re)) {
      if (!iv->low && !iv->high) return "rdfs:Literal";
      bool dec = (!iv->low || terminates(*iv->low)) && (!iv->high || terminates(*iv->high));
      auto lit = [&](const Rational& r) {
        return quote(to_string(r)) + (dec ? "^^xsd:decimal" : "^^owl:rational");
      };
      std::string s = std::string("DatatypeRestriction(") + (dec ? "xsd:decimal" : "owl:rational");
      if (iv->low) s += " xsd:minInclusive " + lit(*iv->low);
      if (iv->high) s += " xsd:maxInclusive " + lit(*iv->high);
      return s + ")";
    }
    const auto& vs = std::get<ValueSet>(re);
    std::string s = "DataOneOf(";
    for (size_t i = 0; i < vs.values.size(); ++i) {
      const auto& v = vs.values[i];
      s += (i ? " " : "") + (v.is_number() ? number_literal(v.number()) : quote(v.text()));
    }
    return s + ")";
  }

  std::string render(const DTop&) { return "owl:Thing"; }
  std::string render(const DBottom&) { return "owl:Nothing"; }
  std::string render(const DNamed& n) { return cls(n.name); }
  std::string render(const DNominal& n) {
    std::string s = "ObjectOneOf(";
    for (size_t i = 0; i < n.ids.size(); ++i) {
      individuals.insert(n.ids[i]);
      s += (i ? " " : "") + iri(n.ids[i]);
    }
    return s + ")";
  }
  std::string render(const DAnd& a) { return nary("ObjectIntersectionOf", a.ops, false); }
  std::string render(const DOr& o) { return nary("ObjectUnionOf", o.ops, false); }
  std::string render(const DNot& n) { return "ObjectComplementOf(" + concept_of(n.c) + ")"; }
  std::string render(const DExists& e) {
    if (is_data_concept(e.filler)) return "DataSomeValuesFrom(" + data_role(e.role) + " " + range(e.filler) + ")";
    return "ObjectSomeValuesFrom(" + object_role(e.role) + " " + concept_of(e.filler) + ")";
  }
  std::string render(const DForall& e) {
    if (is_data_concept(e.filler)) return "DataAllValuesFrom(" + data_role(e.role) + " " + range(e.filler) + ")";
    return "ObjectAllValuesFrom(" + object_role(e.role) + " " + concept_of(e.filler) + ")";
  }
  std::string render(const DCard& c) {
    const char* k = c.kind == CardKind::Min ? "Min" : c.kind == CardKind::Max ? "Max" : "Exact";
    std::string n = std::to_string(c.n);
    if (is_data_concept(c.filler))
      return std::string("Data") + k + "Cardinality(" + n + " " + data_role(c.role) + " " + range(c.filler) + ")";
    return std::string("Object") + k + "Cardinality(" + n + " " + object_role(c.role) + " " + concept_of(c.filler) +
           ")";
  }
  std::string render(const DData& d) { return region(d.range); }
};

std::string axiom_text(OwlWriter& w, const DLAxiom& a) {
  if (a.kind == DLAxiom::Kind::Disjoint)
    return "DisjointClasses(" + w.concept_of(a.a) + " " + w.concept_of(a.b) + ")";
  return "SubClassOf(" + w.concept_of(a.a) + " " + w.concept_of(a.b) + ")";
}

}  // namespace

std::string emit_owl(const Model& m) {
  for (const auto& e : m.elements)
    if (auto* q = e.quality(); q && q->annotations.size() > 1)
      throw Error(ErrorCode::NestedUNotExportable, e.id + " nests U annotations; OWL export supports one");

  OwlWriter w;
  std::vector<const Element*> els;
  for (const auto& e : m.elements) els.push_back(&e);
  std::sort(els.begin(), els.end(), [](const Element* a, const Element* b) { return a->id < b->id; });

  // per element: labels, equivalences, subsumption bodies, operator edges
  std::vector<std::string> body;
  for (const auto* e : els) {
    w.cls(e->id);
    if (auto* t = std::get_if<NLText>(&e->body)) {
      body.push_back("AnnotationAssertion(rdfs:label " + iri(e->id) + " " + quote(t->text) + ")");
      continue;
    }
    auto tr = translate_element(*e);
    if (!tr) continue;
    body.push_back("EquivalentClasses(" + iri(e->id) + " " + w.concept_of(simplify(tr->rooted)) + ")");
    for (const auto& ax : tr->axioms) body.push_back(axiom_text(w, ax));
  }
  std::vector<std::pair<std::string, std::string>> edges;  // sort key, text
  for (const auto& a : m.applications) {
    const char* prop = op_property(a.op);
    if (!prop) continue;
    w.object_props.insert(prop);
    for (const auto& in : a.inputs) {
      for (const auto& out : a.outputs)
        edges.emplace_back(in, "SubClassOf(" + iri(in) + " ObjectSomeValuesFrom(" + iri(prop) + " " + iri(out) + "))");
      if (one_to_many(a.op) && a.outputs.size() > 1)
        edges.emplace_back(in, "SubClassOf(" + iri(in) + " ObjectMinCardinality(" + std::to_string(a.outputs.size()) +
                                   " " + iri(prop) + " owl:Thing))");
    }
  }
  std::stable_sort(edges.begin(), edges.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
  for (auto& [k, t] : edges) body.push_back(std::move(t));

  std::set<std::string> fulfilled(m.fulfilled_marks.begin(), m.fulfilled_marks.end());
  for (const auto& e : m.elements)
    if (e.kind == ElementKind::DA) fulfilled.insert(e.id);
  for (const auto& id : fulfilled) body.push_back("SubClassOf(" + iri(id) + " :Fulfilled_Thing)");

  std::vector<std::string> background;
  for (const auto& ax : translate_axioms(m.axioms)) background.push_back(axiom_text(w, ax));

  // scaffolding
  std::vector<std::string> scaffold{
      "EquivalentClasses(:Fulfilled_Thing ObjectSomeValuesFrom(:relate_to :Fulfilled_Thing))",
      "SubClassOf(:ALL_Fulfilled_Thing :Fulfilled_Thing)",
      "EquivalentClasses(:ALL_Fulfilled_Thing ObjectAllValuesFrom(:relate_to_many :Fulfilled_Thing))",
      "SubObjectPropertyOf(:relate_to_one :relate_to)",
      "SubObjectPropertyOf(:relate_to_many :relate_to)",
  };
  for (auto k : {OperatorKind::Interpret, OperatorKind::Scale, OperatorKind::DeUniversalize, OperatorKind::Observe,
                 OperatorKind::Reduce, OperatorKind::Focus, OperatorKind::Operationalize}) {
    std::string p = op_property(k);
    w.object_props.insert(p);
    scaffold.push_back("SubObjectPropertyOf(" + iri(p) + (one_to_many(k) ? " :relate_to_many)" : " :relate_to_one)"));
  }
  for (auto c : {"Fulfilled_Thing", "ALL_Fulfilled_Thing"}) w.classes.insert(c);
  for (auto p : {"relate_to", "relate_to_one", "relate_to_many"}) w.object_props.insert(p);

  std::string name = m.name.empty() ? "model" : m.name;
  std::ostringstream os;
  os << "Prefix(:=<urn:desiree:" << name << "#>)\n"
     << "Prefix(owl:=<http://www.w3.org/2002/07/owl#>)\n"
     << "Prefix(rdf:=<http://www.w3.org/1999/02/22-rdf-syntax-ns#>)\n"
     << "Prefix(rdfs:=<http://www.w3.org/2000/01/rdf-schema#>)\n"
     << "Prefix(xsd:=<http://www.w3.org/2001/XMLSchema#>)\n\n"
     << "Ontology(<urn:desiree:" << name << ">\n";
  for (const auto& c : w.classes) os << "Declaration(Class(" << iri(c) << "))\n";
  for (const auto& p : w.object_props) os << "Declaration(ObjectProperty(" << iri(p) << "))\n";
  for (const auto& p : w.data_props) os << "Declaration(DataProperty(" << iri(p) << "))\n";
  for (const auto& d : w.datatypes) os << "Declaration(Datatype(" << iri(d) << "))\n";
  for (const auto& i : w.individuals) os << "Declaration(NamedIndividual(" << iri(i) << "))\n";
  for (const auto& s : scaffold) os << s << "\n";
  for (const auto& s : background) os << s << "\n";
  for (const auto& s : body) os << s << "\n";
  os << ")\n";
  return os.str();
}

std::string report_name(Fulfillment f) {
  switch (f) {
    case Fulfillment::Fulfilled: return "fulfilled";
    case Fulfillment::Unfulfilled: return "unfulfilled";
    case Fulfillment::Unknown: return "unknown";
  }
  return "unknown";
}

namespace {

json finding_json(const LintFinding& f) {
  json j;
  j["element"] = f.element;
  j["issue"] = to_string(f.issue);
  j["detail"] = f.detail;
  j["suggestion"] = f.suggestion ? json(to_string(*f.suggestion)) : json(nullptr);
  if (f.span)
    j["span"] = {{"line", f.span->line},
                 {"column", f.span->column},
                 {"end_line", f.span->end_line},
                 {"end_column", f.span->end_column}};
  else
    j["span"] = nullptr;
  return j;
}

json findings_json(const std::vector<LintFinding>& fs) {
  json a = json::array();
  for (const auto& f : fs) a.push_back(finding_json(f));
  return a;
}

json verdict_json(const Verdict& v) {
  json j;
  j["verdict"] = to_string(v.kind);
  j["method"] = v.method;
  if (!v.witness_individual.empty()) j["witness"] = v.witness_individual;
  return j;
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

}  // namespace

std::string emit_report(const std::vector<LintFinding>& findings, const FulfillmentResult& fulfillment,
                        const std::vector<SubsumptionRecord>& subsumptions) {
  json j;
  j["version"] = 1;
  j["findings"] = findings_json(findings);
  json f = json::object();
  for (const auto& [id, s] : fulfillment.state) f[id] = report_name(s);
  j["fulfillment"] = f;
  json s = json::array();
  for (const auto& r : subsumptions) {
    json x{{"sub", r.sub}, {"sup", r.sup}};
    x.update(verdict_json(r.verdict));
    s.push_back(x);
  }
  j["subsumptions"] = s;
  if (!fulfillment.warnings.empty()) j["warnings"] = fulfillment.warnings;
  return j.dump();
}

std::string emit_findings(const std::vector<LintFinding>& findings) { return dump(findings_json(findings)); }

std::string emit_check_report(const std::vector<Diagnostic>& validation, const Model& m, const StrengthReport& tags,
                              const ConsistencyResult& consistency) {
  json j;
  j["version"] = 1;
  json v = json::array();
  for (const auto& d : validation)
    v.push_back({{"severity", d.severity == Severity::Error ? "error" : "warning"},
                 {"code", d.code},
                 {"element", d.element},
                 {"message", d.message}});
  j["validation"] = v;
  json t = json::array();
  for (const auto& d : tags.diagnostics) {
    json x{{"application", d.application}, {"input", d.input}, {"declared", to_string(d.declared)},
           {"message", d.message}};
    if (d.application < m.applications.size()) x["operator"] = to_string(m.applications[d.application].op);
    t.push_back(x);
  }
  j["strength"] = t;
  json c;
  c["status"] = to_string(consistency.status);
  json ex = json::array();
  for (const auto& e : consistency.explanations)
    ex.push_back({{"message", e.message}, {"individual", e.individual}, {"axioms", e.axioms}});
  c["explanations"] = ex;
  j["consistency"] = c;
  return dump(j);
}

std::string emit_query_report(const std::string& pattern, const std::vector<std::string>& matches) {
  json j{{"version", 1}, {"pattern", pattern}, {"matches", matches}};
  return dump(j);
}

std::string emit_membership_report(const std::string& quality, const Rational& value, const Degrees& degrees) {
  json j;
  j["version"] = 1;
  j["quality"] = quality;
  j["value"] = to_string(value);
  json d = json::object();
  for (const auto& [r, v] : degrees) d[r] = to_string(v);
  j["degrees"] = d;
  return dump(j);
}

}  // namespace desiree
