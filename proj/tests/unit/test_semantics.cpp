#include "desiree/error.hpp"
#include "desiree/semantics.hpp"
#include "desiree/parser.hpp"
#include "support/fixtures.hpp"
#include "support/generators.hpp"

#include <doctest.h>

using namespace desiree;

namespace {

World small_world() {
  World w;
  for (const char* n : {"i1", "i2", "w3"}) w.add_individual(n);
  w.assert_concept("A", "i1");
  w.assert_concept("A", "i2");
  w.assert_concept("B", "i2");
  w.assert_slot("r", "i1", "i2");
  w.assert_slot("r", "i1", "w3");
  w.assert_slot("r", "w3", "i2");
  return w;
}

std::set<std::string> names(std::initializer_list<const char*> xs) { return {xs.begin(), xs.end()}; }

}  // namespace

TEST_CASE("set semantics of the basic constructors") {
  World w = small_world();
  CHECK(eval_description(atomic("A"), w) == names({"i1", "i2"}));
  CHECK(eval_description(conj(atomic("A"), atomic("B")), w) == names({"i2"}));
  CHECK(eval_description(disj(atomic("B"), enumeration({"w3"})), w) == names({"i2", "w3"}));
  CHECK(eval_description(minus(atomic("A"), atomic("B")), w) == names({"i1"}));
  CHECK(eval_description(thing(), w).size() == 3);
  CHECK(eval_description(nothing(), w).empty());
}

TEST_CASE("slot modifiers count fillers") {
  World w = small_world();
  CHECK(eval_description(slot("r", thing(), Modifier::at_least(2)), w) == names({"i1"}));
  CHECK(eval_description(slot("r", atomic("B"), Modifier::exactly_one()), w) == names({"i1", "w3"}));
  CHECK(eval_description(slot("r", atomic("B"), Modifier::some()), w) == names({"i1", "w3"}));
  // ONLY holds vacuously for individuals without fillers
  CHECK(eval_description(slot("r", atomic("B"), Modifier::only()), w) == names({"i2", "w3"}));
  CHECK(eval_description(slot("r", thing(), Modifier::at_most(1)), w) == names({"i2", "w3"}));
}

TEST_CASE("projection collects fillers of the source") {
  World w = small_world();
  CHECK(eval_description(projection(enumeration({"i1"}), "r"), w) == names({"i2", "w3"}));
}

TEST_CASE("translation agrees with the set semantics on random worlds") {
  gen::Rng g(42);
  std::vector<World> worlds;
  for (int i = 0; i < 16; ++i) worlds.push_back(gen::world(g, 1 + gen::pick(g, 4)));
  for (int i = 0; i < 1500; ++i) {
    Description d = gen::description(g, 3);
    DLConcept c = translate_description(d);
    for (const World& w : worlds) {
      CAPTURE(print_description(d));
      REQUIRE(eval_extension(d, w) == eval_dl(c, w));
    }
  }
}

TEST_CASE("element translation keeps roots and axioms apart") {
  Model m = fx::parse("fc FC1 := Data_table :< <accessed_by: ONLY Manager>;\n"
                      "func F1 := Send <object: Reminder>;");
  auto fc = translate_element(*m.find("FC1"));
  REQUIRE(fc);
  CHECK(fc->axioms.size() == 1);
  auto f = translate_element(*m.find("F1"));
  REQUIRE(f);
  CHECK(to_text(f->rooted) == "Function ⊓ Send ⊓ =1 object.Reminder");
  CHECK(to_text(f->content) == "Send ⊓ =1 object.Reminder");
  Model g = fx::parse("goal G := \"the system shall be fast\";");
  CHECK_FALSE(translate_element(*g.find("G")));
}

TEST_CASE("U annotations become percentage disjuncts") {
  Model m = fx::load("operators_worked.dsr");
  Element e = expand_u(*m.find("QG3_2"));
  CHECK(e.quality()->annotations.empty());
  Model bad = fx::parse("qg Q := Processing_time (File_search) :: Fast;");
  Element q = *bad.find("Q");
  std::get<QualityStatement>(q.body).annotations.push_back({"?X", {"observed_by"}, Rational(1, 2)});
  CHECK_THROWS_AS(expand_u(q), Error);
}

TEST_CASE("element_holds over an explicit world") {
  Model m = fx::load("authorized.dsr");
  REQUIRE(m.world);
  auto v1 = element_holds(*m.find("FC1"), *m.world);
  CHECK(v1.status == HoldStatus::Violated);
  CHECK(v1.witnesses.count("spi1"));
  auto v2 = element_holds(*m.find("FC2"), *m.world);
  CHECK(v2.status == HoldStatus::Holds);
  Model g = fx::parse("goal G := \"be fast\";");
  CHECK_THROWS_AS(element_holds(*g.find("G"), *m.world), Error);
}

TEST_CASE("filler lookup and replacement by slot path") {
  Description d = conj(atomic("Send"), slot("object", atomic("Reminder")));
  CHECK(*filler_at(d, {"object"}) == atomic("Reminder"));
  CHECK_FALSE(filler_at(d, {"actor"}));
  auto r = replace_at(d, {"object"}, [](const Description&) { return atomic("Email"); });
  REQUIRE(r);
  CHECK(*filler_at(*r, {"object"}) == atomic("Email"));
}
