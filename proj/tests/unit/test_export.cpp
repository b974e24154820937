#include "desiree/export.hpp"
#include "desiree/error.hpp"
#include "support/fixtures.hpp"
#include "support/generators.hpp"

#include <doctest.h>
#include <json.hpp>

#include <regex>
#include <set>

using namespace desiree;

namespace {

// Structural check of functional-style OWL: balanced parentheses outside
// literals, known top-level constructs, and every :Name declared.
std::string owl_problem(const std::string& doc) {
  static const std::set<std::string> top{"Prefix", "Ontology", "Declaration", "SubClassOf", "EquivalentClasses",
                                         "DisjointClasses", "SubObjectPropertyOf", "AnnotationAssertion",
                                         "ClassAssertion", "ObjectPropertyAssertion", "DatatypeDefinition"};
  int depth = 0;
  bool in_str = false, in_iri = false;
  std::string word;
  std::set<std::string> declared, used;
  for (size_t i = 0; i < doc.size(); ++i) {
    char c = doc[i];
    if (in_str) {
      if (c == '\\') ++i;
      else if (c == '"') in_str = false;
      continue;
    }
    if (in_iri) {
      if (c == '>') in_iri = false;
      continue;
    }
    if (c == '"') in_str = true;
    else if (c == '<') in_iri = true;
    else if (c == '(') {
      if ((depth == 0 || depth == 1) && !word.empty() && !top.count(word) && word != "Declaration")
        return "unknown construct " + word;
      ++depth;
    } else if (c == ')') {
      if (--depth < 0) return "unbalanced ')'";
    }
    if (std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == ':') word += c;
    else word.clear();
  }
  if (depth != 0 || in_str || in_iri) return "unterminated document";
  std::regex decl(R"(Declaration\((?:Class|ObjectProperty|DataProperty|NamedIndividual|Datatype)\((:[A-Za-z0-9_']+)\)\))");
  for (std::sregex_iterator it(doc.begin(), doc.end(), decl), end; it != end; ++it) declared.insert((*it)[1]);
  std::regex name(R"((?:^|[\s(]):([A-Za-z_][A-Za-z0-9_']*))");
  for (std::sregex_iterator it(doc.begin(), doc.end(), name), end; it != end; ++it) used.insert(":" + (*it)[1].str());
  for (const auto& u : used)
    if (!declared.count(u)) return "undeclared " + u;
  return "";
}

}  // namespace

TEST_CASE("fixtures export to well-formed OWL") {
  for (const char* f : {"traffic.dsr", "operators_worked.dsr", "authorized.dsr", "user_entity.dsr",
                        "fulfillment.dsr", "meeting_lint.dsr"}) {
    CAPTURE(f);
    CHECK(owl_problem(emit_owl(fx::load(f))) == "");
  }
}

TEST_CASE("generated models export to well-formed OWL") {
  gen::Rng g(11);
  for (int i = 0; i < 60; ++i) {
    Model m = gen::model(g, i);
    std::string owl;
    try {
      owl = emit_owl(m);
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::NestedUNotExportable);
      continue;
    }
    CAPTURE(owl);
    CHECK(owl_problem(owl) == "");
  }
}

TEST_CASE("element axioms and operator edges appear") {
  std::string owl = emit_owl(fx::load("traffic.dsr"));
  CHECK(owl.find("EquivalentClasses(:F5 ObjectIntersectionOf(:Collect :Function") != std::string::npos);
  CHECK(owl.find("SubClassOf(:FG4 ObjectSomeValuesFrom(:operationalize_to") != std::string::npos);
  CHECK(owl.find("SubClassOf(:F5 :Fulfilled_Thing)") != std::string::npos);
}

TEST_CASE("two U annotations cannot be exported") {
  Model m = fx::parse("qg Q := Processing_time (File_search) :: Fast;");
  auto& q = std::get<QualityStatement>(m.find("Q")->body);
  q.annotations.push_back({"?X", {"inheres_in"}, Rational(4, 5)});
  q.annotations.push_back({"?Y", {"inheres_in"}, Rational(1, 2)});
  try {
    emit_owl(m);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NestedUNotExportable);
  }
}

TEST_CASE("JSON reports") {
  CHECK(emit_report({}, {}, {}) == R"({"version":1,"findings":[],"fulfillment":{},"subsumptions":[]})");
  auto findings = lint_model(fx::load("meeting_lint.dsr"));
  auto j = nlohmann::json::parse(emit_findings(findings));
  REQUIRE(j.is_array());
  CHECK(j.size() == findings.size());
  CHECK(j[0].contains("span"));
  auto rep = nlohmann::json::parse(emit_report(findings, propagate_fulfillment(fx::load("traffic.dsr")), {}));
  CHECK(rep["fulfillment"]["F5"] == "fulfilled");
  CHECK(report_name(Fulfillment::Unknown) == std::string("unknown"));
}
