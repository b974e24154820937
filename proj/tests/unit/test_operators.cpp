#include "desiree/operators.hpp"
#include "desiree/error.hpp"
#include "desiree/parser.hpp"
#include "desiree/reasoner.hpp"
#include "support/fixtures.hpp"

#include <doctest.h>

using namespace desiree;

namespace {

const Element& last_output(const Model& m) { return *m.find(m.applications.back().outputs.back()); }

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error thrown");
  return ErrorCode::Usage;
}

}  // namespace

TEST_CASE("operators leave the input model untouched") {
  Model m = fx::parse("qc Q := Processing_time (File_search) :: [0, 30 (Sec)];");
  Model before = m;
  ScaleArgs s;
  s.factor = std::pair<Rational, Rational>{1, Rational(6, 5)};
  Model out = apply_scale(m, "Q", s);
  CHECK(m == before);
  CHECK(out.elements.size() == 2);
  CHECK(out.applications.size() == 1);
}

TEST_CASE("quantitative scale multiplies the bounds") {
  Model m = fx::parse("qc Q := Processing_time (File_search) :: [0, 30 (Sec)];");
  ScaleArgs s;
  s.factor = std::pair<Rational, Rational>{1, Rational(6, 5)};
  Model out = apply_scale(m, "Q", s);
  const auto& iv = std::get<Interval>(last_output(out).quality()->region);
  CHECK(*iv.low == 0);
  CHECK(*iv.high == 36);
  CHECK(iv.unit == "Sec");
  ScaleArgs bad;
  bad.factor = std::pair<Rational, Rational>{1, Rational(1, 2)};
  CHECK(code_of([&] { apply_scale(m, "Q", bad); }) == ErrorCode::InvalidFactor);
}

TEST_CASE("qualitative scale needs an ordering axiom") {
  Model m = fx::parse("qg Q := Processing_time (File_search) :: Fast;");
  ScaleArgs s;
  s.factor = std::string("Nearly");
  CHECK(code_of([&] { apply_scale(m, "Q", s); }) == ErrorCode::NoOrderingAxiom);
  m.axioms.push_back({atomic("Fast"), atomic("Nearly_fast")});
  Model out = apply_scale(m, "Q", s);
  const auto& r = std::get<NamedRegion>(last_output(out).quality()->region);
  CHECK(r.name == "Nearly_fast");
  CHECK(qualified_region_name("Nearly", "Fast") == "Nearly_fast");
}

TEST_CASE("deuniversalize adds one annotation, once") {
  Model m = fx::parse("qg Q := Processing_time (File_search) :: Fast;");
  UAnnotation u{"?X", {"inheres_in"}, Rational(4, 5)};
  Model out = apply_deuniversalize(m, "Q", u);
  CHECK(last_output(out).quality()->annotations == std::vector<UAnnotation>{u});
  std::string out_id = out.applications.back().outputs.back();
  CHECK(code_of([&] { apply_deuniversalize(out, out_id, u); }) == ErrorCode::AlreadyUniversalized);
  UAnnotation wrong{"?X", {"part_of"}, Rational(1, 2)};
  CHECK(code_of([&] { apply_deuniversalize(m, "Q", wrong); }) == ErrorCode::PathMismatch);
}

TEST_CASE("focus produces one weaker output per target") {
  Model m = fx::parse("qg Q := Security ({the_system}) :: Good;");
  FocusArgs f;
  f.on_quality = false;
  f.targets = {enumeration({"the_data_module"}), enumeration({"the_ui"})};
  Model out = apply_focus(m, "Q", f);
  REQUIRE(out.applications.back().outputs.size() == 2);
  CHECK(check_strength_tags(out).diagnostics.empty());
}

TEST_CASE("observe yields a QC with the observer") {
  Model m = fx::parse("qg Q := Style ({the_interface}) :: Simple;");
  Model out = apply_observe(m, "Q", atomic("Surveyed_user"));
  const Element& e = last_output(out);
  CHECK(e.kind == ElementKind::QC);
  CHECK(e.quality()->observers == std::vector<Description>{atomic("Surveyed_user")});
}

TEST_CASE("routing and signatures are enforced") {
  Model m = fx::parse("fg G := Trip :< Booked;\nfunc F := Book <object: Trip>;");
  Element f2{"F2", ElementKind::F, FunctionDesc{"Pay", {}}};
  CHECK_NOTHROW(apply_operationalize(m, "G", {f2}));
  Element q{"Q9", ElementKind::QG, QualityStatement{atomic("Cost"), atomic("Trip"), NamedRegion{"Low", true}, {}, {}}};
  CHECK_THROWS_AS(apply_operationalize(m, "G", {q}), Error);
  CHECK(code_of([&] { apply_reduce(m, "Nope", {f2}); }) == ErrorCode::UnknownElement);
  CHECK_THROWS_AS(apply_interpret(m, "F", f2, Strength::Weakening), Error);
}

TEST_CASE("resolve needs a declared conflict and drops the losers") {
  Model m = fx::parse("func F1 := Send <object: A>;\nfunc F2 := Send <object: B>;");
  CHECK(code_of([&] { apply_resolve(m, {"F1", "F2"}, {"F1"}); }) == ErrorCode::NotAConflict);
  m.conflicts.push_back({"F1", "F2"});
  Model out = apply_resolve(m, {"F1", "F2"}, {"F1"});
  CHECK(out.dropped() == std::set<std::string>{"F2"});
}
