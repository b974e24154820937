#include "desiree/lint.hpp"
#include "desiree/error.hpp"
#include "support/fixtures.hpp"

#include <doctest.h>

#include <algorithm>

using namespace desiree;

namespace {

bool has(const std::vector<LintFinding>& fs, const std::string& el, Issue i) {
  return std::any_of(fs.begin(), fs.end(), [&](const LintFinding& f) { return f.element == el && f.issue == i; });
}

}  // namespace

TEST_CASE("each seeded issue in the meeting model is found") {
  auto fs = lint_model(fx::load("meeting_lint.dsr"));
  CHECK(has(fs, "G1", Issue::Ambiguous));
  CHECK(has(fs, "G2", Issue::Unmodifiable));
  CHECK(has(fs, "QC1", Issue::Unsatisfiable));
  CHECK(has(fs, "QG2", Issue::Unverifiable));
  CHECK(has(fs, "F1", Issue::Incomplete));
  CHECK(has(fs, "F2", Issue::Inconsistent));
  CHECK(has(fs, "F3", Issue::Redundant));
  CHECK(fs.size() == 10);
  CHECK(std::none_of(fs.begin(), fs.end(), [](const LintFinding& f) { return f.issue == Issue::Invalid; }));
}

TEST_CASE("a refined element silences the finding") {
  Model m = fx::parse("qg Q := Learning_time (Meeting_scheduler) :: Short;\n"
                      "qg Q2 := Learning_time (Meeting_scheduler) :: Short U(?X, <inheres_in: ?X>, 80%);\n"
                      "deuniv Q -> Q2 with U(?X, <inheres_in: ?X>, 80%) [weaken];");
  CHECK_FALSE(has(lint_model(m), "Q", Issue::Unsatisfiable));
}

TEST_CASE("incomplete functions name the missing slot") {
  Model m = fx::parse("func F := Book <object: Ticket>;");
  auto fs = lint_model(m);
  REQUIRE(fs.size() == 1);
  CHECK(fs[0].issue == Issue::Incomplete);
  CHECK(fs[0].detail == "Who will book?");
  CHECK(fs[0].suggestion == OperatorKind::Reduce);
}

TEST_CASE("lexicon configuration") {
  LintConfig c = parse_lint_config("# custom\nrequired.Book = actor, object, means\nuniversal = all\n");
  CHECK(c.required.at("Book") == std::vector<std::string>{"actor", "object", "means"});
  CHECK(c.universal == std::vector<std::string>{"all"});
  Model m = fx::parse("func F := Book <actor: Manager> <object: Ticket>;");
  CHECK(lint_model(m).empty());
  CHECK(lint_model(m, c).size() == 1);
  CHECK_THROWS_AS(parse_lint_config("nonsense = 1\n"), Error);
  CHECK_THROWS_AS(parse_lint_config("no equals sign\n"), Error);
}

TEST_CASE("kind hints from free text") {
  auto g = classify_hint("The system shall respond within 2 seconds");
  REQUIRE_FALSE(g.empty());
  CHECK(g[0].kind == ElementKind::QC);
  auto f = classify_hint("The system shall send reminders to participants");
  REQUIRE_FALSE(f.empty());
  CHECK((f[0].kind == ElementKind::F || f[0].kind == ElementKind::FG));
  CHECK(classify_hint("").empty());
}
