#include "desiree/error.hpp"
#include "desiree/parser.hpp"
#include "support/fixtures.hpp"

#include <doctest.h>

using namespace desiree;

TEST_CASE("function and quality statements parse into structure") {
  Model m = fx::parse(
      "func F1 := Collect <actor: {the_system}> <object: Traffic_info> <means: Fixed_sensor>;\n"
      "qc Q1 := Processing_time (File_search) :: [0, 30 (Sec)];\n"
      "qg Q2 := Style ({the_interface}) :: Simple <observed_by: Surveyed_user>;");
  const FunctionDesc* f = m.find("F1")->function();
  REQUIRE(f);
  CHECK(f->head == "Collect");
  REQUIRE(f->slots.size() == 3);
  CHECK(f->slots[0].slot == "actor");
  CHECK(f->slots[0].filler == enumeration({"the_system"}));
  const QualityStatement* q = m.find("Q1")->quality();
  REQUIRE(q);
  const auto* iv = std::get_if<Interval>(&q->region);
  REQUIRE(iv);
  CHECK(*iv->low == 0);
  CHECK(*iv->high == 30);
  CHECK(iv->unit == "Sec");
  CHECK(m.find("Q2")->quality()->observers.size() == 1);
}

TEST_CASE("description operators and precedence") {
  Description d = parse_description("A & B | C");
  CHECK(d == disj(conj(atomic("A"), atomic("B")), atomic("C")));
  CHECK(parse_description("<r: >=2 A>") == slot("r", atomic("A"), Modifier::at_least(2)));
  CHECK(parse_description("<r: ONLY A>") == slot("r", atomic("A"), Modifier::only()));
  CHECK(parse_description("A - B") == minus(atomic("A"), atomic("B")));
  CHECK_THROWS_AS(parse_description("A &"), Error);
}

TEST_CASE("printing round-trips every fixture") {
  for (const char* f : {"traffic.dsr", "operators_worked.dsr", "authorized.dsr", "user_entity.dsr",
                        "cost_intervals.dsr", "cost_points.dsr", "fulfillment.dsr", "threshold.dsr",
                        "meeting_lint.dsr"}) {
    CAPTURE(f);
    Model m = fx::load(f);
    std::string once = print_model(m);
    auto again = parse_model(once);
    REQUIRE(again.ok());
    CHECK(*again.model == m);
    CHECK(print_model(*again.model) == once);
  }
}

TEST_CASE("syntax errors carry a position") {
  auto r = parse_model(fx::text("syntax_error.dsr"));
  REQUIRE_FALSE(r.ok());
  REQUIRE(!r.diagnostics.empty());
  CHECK(r.diagnostics[0].span.line == 2);
  CHECK(r.diagnostics[0].span.column == 35);
  CHECK(format_diagnostic(r.diagnostics[0]) == "2:35: error: expected ')' but found '::'");
}

TEST_CASE("validation failures are reported as diagnostics") {
  auto dup = parse_model("model t {\nfunc F := Send <object: A>;\nfunc F := Send <object: B>;\n}\n");
  CHECK_FALSE(dup.ok());
  auto dangling = parse_model("model t {\nfg G := Trip :< Booked;\noperationalize G -> F9;\n}\n");
  CHECK_FALSE(dangling.ok());
  REQUIRE_FALSE(dangling.diagnostics.empty());
  CHECK(dangling.diagnostics[0].span.line == 3);
  auto card = parse_model("model t {\nfunc F := Send <object: >=0 A>;\n}\n");
  CHECK_FALSE(card.ok());
}

TEST_CASE("element spans point at the declaration") {
  Model m = fx::load("traffic.dsr");
  REQUIRE(m.spans.count("F5"));
  CHECK(m.spans.at("F5").line > 0);
}
