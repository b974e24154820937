#pragma once
// Graded membership of a 1-D quality value in prototype regions.

#include "desiree/model.hpp"
#include "desiree/rational.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace desiree {

// Region name and degree, in region order.
using Degrees = std::vector<std::pair<std::string, Rational>>;

constexpr uint64_t kDefaultCompletionCap = 1000000;

// Counting measure over completions. Ties (p equidistant from the nearest
// selected prototypes) count for no region.
Degrees membership_points(const Rational& p, const std::vector<PrototypeRegion>& regions,
                          uint64_t cap = kDefaultCompletionCap);

// Area of the completion rectangle [a,b]×[c,d] on r1's side of y = 2p − x,
// as a fraction. Returns (degree of r1, degree of r2). Needs a < b < c < d.
std::pair<Rational, Rational> membership_interval_pair(const Rational& p, const Rational& a, const Rational& b,
                                                       const Rational& c, const Rational& d);

// Adjacent pairs collated; degrees sum to 1.
Degrees membership_intervals(const Rational& p, const std::vector<PrototypeRegion>& regions);

// Dispatches on the region style; mixing points and intervals is an error.
Degrees membership(const Rational& p, const QualitySpace& space, uint64_t cap = kDefaultCompletionCap);

// c0 + c1·p + c2·p² on [lo, hi]; a missing bound is open to infinity.
struct Piece {
  std::optional<Rational> lo, hi;
  Rational c0 = 0, c1 = 0, c2 = 0;
  const char* kind() const;  // "constant", "linear", "quadratic"
  Rational at(const Rational& p) const { return c0 + c1 * p + c2 * p * p; }
  bool operator==(const Piece&) const = default;
};

struct MembershipFunction {
  std::string region;
  std::vector<Piece> pieces;  // ordered, tiling the line, sharing endpoints
  Rational operator()(const Rational& p) const;
  std::vector<Rational> breakpoints() const;
};

std::vector<MembershipFunction> derive_membership_function(const std::vector<PrototypeRegion>& regions);

// Degree to which an observed value satisfies a QG over a named region. The
// target defaults to the QG's own region.
Rational satisfaction_degree(const Element& qgc, const Rational& value, const QualitySpace& space,
                             const std::string& target = {}, uint64_t cap = kDefaultCompletionCap);

}  // namespace desiree
