#include "desiree/reasoner.hpp"
#include "desiree/parser.hpp"
#include "support/fixtures.hpp"
#include "support/generators.hpp"

#include <doctest.h>

using namespace desiree;

namespace {

Verdict sub(const char* a, const char* b, const std::vector<Subsumption>& ax = {}) {
  return subsumes(parse_description(a), parse_description(b), ax);
}

}  // namespace

TEST_CASE("simple proofs and refutations") {
  CHECK(sub("A & B", "A").kind == VerdictKind::Proven);
  CHECK(sub("A", "A | B").kind == VerdictKind::Proven);
  CHECK(sub("<r: >=2 A>", "<r: SOME A>").kind == VerdictKind::Proven);
  CHECK(sub("A", "A & B").kind == VerdictKind::Refuted);
  CHECK(sub("<r: SOME A>", "<r: ONLY A>").kind == VerdictKind::Refuted);
  CHECK(sub("Nothing", "A").kind == VerdictKind::Proven);
}

TEST_CASE("background axioms are used") {
  std::vector<Subsumption> ax{{atomic("Airline_ticket"), atomic("Ticket")}};
  CHECK(sub("<object: SOME Airline_ticket>", "<object: SOME Ticket>", ax).kind == VerdictKind::Proven);
  CHECK(sub("<object: SOME Ticket>", "<object: SOME Airline_ticket>", ax).kind == VerdictKind::Refuted);
  // exactly one airline ticket does not bound the number of other tickets
  Verdict v = sub("<object: Airline_ticket>", "<object: Ticket>", ax);
  REQUIRE(v.kind == VerdictKind::Refuted);
  CHECK(eval_description(parse_description("<object: Ticket>"), *v.witness).count(v.witness_individual) == 0);
}

TEST_CASE("refutation witnesses are genuine counter-models") {
  gen::Rng g(7);
  std::vector<Subsumption> ax{{atomic("A"), atomic("B")}};
  auto dl_ax = translate_axioms(ax);
  int refuted = 0;
  for (int i = 0; i < 300; ++i) {
    Description c = gen::description(g, 2), d = gen::description(g, 2);
    Verdict v = subsumes(c, d, ax);
    if (v.kind != VerdictKind::Refuted) continue;
    ++refuted;
    REQUIRE(v.witness);
    CAPTURE(print_description(c));
    CAPTURE(print_description(d));
    for (const auto& a : dl_ax) CHECK(world_satisfies(*v.witness, a));
    auto in_c = eval_description(c, *v.witness), in_d = eval_description(d, *v.witness);
    CHECK(in_c.count(v.witness_individual));
    CHECK_FALSE(in_d.count(v.witness_individual));
  }
  CHECK(refuted > 50);
}

TEST_CASE("consistency of the walkthrough models") {
  auto r = check_consistency(fx::load("authorized.dsr"));
  CHECK(r.status == ConsistencyStatus::Inconsistent);
  REQUIRE_FALSE(r.explanations.empty());
  auto r2 = check_consistency(fx::load("traffic.dsr"));
  CHECK(r2.status != ConsistencyStatus::Inconsistent);
}

TEST_CASE("queries match reified structure") {
  Model m = fx::load("traffic.dsr");
  CHECK(query(m, parse_description("<inheres_in: {F5}>")) == std::vector<std::string>{"QG7"});
  CHECK(query(m, parse_description("<object: Traffic_info>")) == std::vector<std::string>{"F5"});
  CHECK(query(m, parse_description("<actor: Nothing>")).empty());
}

TEST_CASE("strength tags on the worked operators") {
  Model m = fx::load("operators_worked.dsr");
  auto rep = check_strength_tags(m);
  CHECK(rep.diagnostics.empty());
  CHECK(rep.verdicts.size() == m.applications.size());
  Model flipped = m;
  flipped.applications[0].strength = Strength::Weakening;
  auto bad = check_strength_tags(flipped);
  REQUIRE(bad.diagnostics.size() == 1);
  CHECK(bad.diagnostics[0].application == 0);
  CHECK(bad.diagnostics[0].input == "F1");
}

TEST_CASE("fulfillment propagation") {
  Model m = fx::load("fulfillment.dsr");
  auto all = propagate_fulfillment(m);
  CHECK(all.state.at("G1") == Fulfillment::Fulfilled);
  Model none = m;
  none.fulfilled_marks.clear();
  CHECK(propagate_fulfillment(none).state.at("G1") == Fulfillment::Unknown);
  Model th = fx::load("threshold.dsr");
  CHECK(propagate_fulfillment(th).state.at("G") == Fulfillment::Unknown);
  CHECK(propagate_fulfillment(th, 3u).state.at("G") == Fulfillment::Fulfilled);
  CHECK(propagate_fulfillment(th, 4u).state.at("G") == Fulfillment::Unknown);
}
