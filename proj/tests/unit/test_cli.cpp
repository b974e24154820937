#include "desiree/cli.hpp"
#include "support/fixtures.hpp"

#include <doctest.h>
#include <json.hpp>

#include <sstream>

using desiree::run_cli;

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST_CASE("membership prints one degree per region") {
  auto r = cli({"membership", fx::path("cost_intervals.dsr"), "--quality", "Cost", "--value", "740"});
  CHECK(r.code == 0);
  CHECK(r.out == "low: 0.595\nmedium: 0.405\nhigh: 0\n");
  auto one = cli({"membership", fx::path("cost_points.dsr"), "--quality", "Cost", "--value", "740", "--region", "low"});
  CHECK(one.out == "0.75\n");
  auto missing = cli({"membership", fx::path("cost_points.dsr"), "--quality", "Cost", "--value", "740", "--region", "x"});
  CHECK(missing.code == 2);
}

TEST_CASE("exit codes") {
  CHECK(cli({"check", fx::path("operators_worked.dsr")}).code == 0);
  CHECK(cli({"check", fx::path("authorized.dsr")}).code == 1);
  CHECK(cli({"lint", fx::path("meeting_lint.dsr")}).code == 1);
  auto bad = cli({"check", fx::path("syntax_error.dsr")});
  CHECK(bad.code == 2);
  CHECK(bad.err.find("2:35: error") != std::string::npos);
  CHECK(cli({"frobnicate"}).code == 2);
  CHECK(cli({"check", "/nonexistent.dsr"}).code == 2);
  CHECK(cli({"check", "--bound", "99", fx::path("traffic.dsr")}).code == 2);
}

TEST_CASE("json output is versioned") {
  for (std::vector<std::string> args : {std::vector<std::string>{"--json", "fmt", fx::path("traffic.dsr")},
                                        {"check", "--json", fx::path("traffic.dsr")},
                                        {"query", fx::path("traffic.dsr"), "--pattern", "<object: Traffic_info>", "--json"},
                                        {"fulfill", "--json", fx::path("traffic.dsr")},
                                        {"membership", "--json", fx::path("cost_points.dsr"), "--quality", "Cost",
                                         "--value", "740"}}) {
    auto r = cli(args);
    CAPTURE(args[0]);
    auto j = nlohmann::json::parse(r.out);
    CHECK(j["version"] == 1);
  }
}

TEST_CASE("fmt output reparses to the same model") {
  auto r = cli({"fmt", fx::path("operators_worked.dsr")});
  REQUIRE(r.code == 0);
  auto again = desiree::parse_model(r.out);
  REQUIRE(again.ok());
  CHECK(*again.model == fx::load("operators_worked.dsr"));
}

TEST_CASE("fulfill and query") {
  auto f = cli({"fulfill", fx::path("threshold.dsr"), "--threshold", "3"});
  CHECK(f.out.find("G: Fulfilled") != std::string::npos);
  auto q = cli({"query", fx::path("traffic.dsr"), "--pattern", "<inheres_in: {F5}>"});
  CHECK(q.out == "QG7\n");
}
