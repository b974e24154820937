#include "desiree/membership.hpp"
#include "desiree/error.hpp"
#include "support/fixtures.hpp"

#include <doctest.h>

using namespace desiree;

namespace {

PrototypeRegion iv(std::string n, int a, int b) {
  PrototypeRegion r;
  r.name = std::move(n);
  r.is_interval = true;
  r.low = a;
  r.high = b;
  return r;
}

PrototypeRegion pts(std::string n, std::vector<Rational> p) {
  PrototypeRegion r;
  r.name = std::move(n);
  r.points = std::move(p);
  return r;
}

Rational q(long n, long d) {
  Rational r(n, d);
  r.canonicalize();
  return r;
}

}  // namespace

TEST_CASE("interval pair: closed form at hand-computed points") {
  // Rectangle [0,2]x[4,6]: boundary x+y = 2p. At p = 3 the line is the diagonal.
  auto [m, r] = membership_interval_pair(3, 0, 2, 4, 6);
  CHECK(m == q(1, 2));
  CHECK(r == q(1, 2));
  // p = 2: only the corner (0,4) is at or below x+y=4, area 0.
  CHECK(membership_interval_pair(2, 0, 2, 4, 6).first == 1);
  CHECK(membership_interval_pair(4, 0, 2, 4, 6).first == 0);
  // p = 5/2: triangle of legs 1, area 1/2 out of 4 on r2's side
  CHECK(membership_interval_pair(q(5, 2), 0, 2, 4, 6).second == q(1, 8));
}

TEST_CASE("points: counting over completions") {
  auto d = membership_points(740, {pts("low", {500, 700}), pts("medium", {800, 1000}), pts("high", {1200, 1500})});
  CHECK(d[0].second == q(3, 4));
  CHECK(d[1].second == q(1, 4));
  CHECK(d[2].second == 0);
}

TEST_CASE("far from every prototype the nearest region wins") {
  auto regions = std::vector<PrototypeRegion>{iv("low", 500, 700), iv("medium", 800, 1000), iv("high", 1200, 1500)};
  CHECK(membership_intervals(100, regions)[0].second == 1);
  CHECK(membership_intervals(5000, regions)[2].second == 1);
  CHECK(membership_intervals(900, regions)[1].second == 1);
}

TEST_CASE("piecewise function matches direct evaluation") {
  auto regions = std::vector<PrototypeRegion>{iv("low", 500, 700), iv("medium", 800, 1000), iv("high", 1200, 1500)};
  auto fns = derive_membership_function(regions);
  REQUIRE(fns.size() == 3);
  for (int p = 300; p <= 1700; p += 7) {
    auto d = membership_intervals(p, regions);
    for (size_t i = 0; i < 3; ++i) CHECK(fns[i](p) == d[i].second);
  }
  for (const auto& f : fns)
    for (const auto& piece : f.pieces) CHECK(std::string(piece.kind()).size() > 0);
}

TEST_CASE("quality spaces from model files") {
  Model m = fx::load("cost_points.dsr");
  auto d = membership(740, *m.space("Cost"));
  CHECK(d[0].first == "low");
  CHECK(d[0].second == q(3, 4));
  Model iv_model = fx::load("cost_intervals.dsr");
  CHECK(membership(740, *iv_model.space("Cost"))[0].second == q(119, 200));
}

TEST_CASE("mixing points and intervals is rejected") {
  QualitySpace s{"Cost", {iv("low", 1, 2), pts("high", {5, 6})}};
  CHECK_THROWS_AS(membership(3, s), Error);
}

TEST_CASE("satisfaction degree of a quality goal") {
  Model m = fx::load("cost_points.dsr");
  CHECK(satisfaction_degree(*m.find("QG1"), 740, *m.space("Cost")) == q(3, 4));
  CHECK(satisfaction_degree(*m.find("QG1"), 740, *m.space("Cost"), "medium") == q(1, 4));
}
