#include "desiree/membership.hpp"

#include "desiree/error.hpp"

#include <algorithm>
#include <set>

namespace desiree {

const char* Piece::kind() const {
  if (c2 != 0) return "quadratic";
  if (c1 != 0) return "linear";
  return "constant";
}

namespace {

bool in_piece(const Piece& pc, const Rational& p) {
  return (!pc.lo || *pc.lo <= p) && (!pc.hi || p <= *pc.hi);
}

Rational eval(const std::vector<Piece>& ps, const Rational& p) {
  for (const auto& pc : ps)
    if (in_piece(pc, p)) return pc.at(p);
  return 0;
}

Piece constant(std::optional<Rational> lo, std::optional<Rational> hi, Rational v) {
  Piece p;
  p.lo = std::move(lo);
  p.hi = std::move(hi);
  p.c0 = std::move(v);
  return p;
}

void check_order(const Rational& a, const Rational& b, const Rational& c, const Rational& d) {
  if (!(a < b && b < c && c < d))
    throw Error(ErrorCode::Invalid, "prototype intervals must satisfy a < b < c < d");
}

// Degree of r1 for the pair ([a,b], [c,d]) as published pieces:
// 1 | 1 − (2p−a−c)²/2A | linear middle (unequal widths) | (b+d−2p)²/2A | 0
std::vector<Piece> pair_pieces(const Rational& a, const Rational& b, const Rational& c, const Rational& d) {
  check_order(a, b, c, d);
  const Rational A2 = 2 * (b - a) * (d - c);
  const Rational s = a + c, u = b + d;
  const Rational k1 = s / 2, k4 = u / 2;
  const Rational k2 = std::min<Rational>((b + c) / 2, (a + d) / 2);
  const Rational k3 = std::max<Rational>((b + c) / 2, (a + d) / 2);

  std::vector<Piece> out;
  out.push_back(constant(std::nullopt, k1, 1));

  Piece rise;  // 1 − (4p² − 4sp + s²)/2A
  rise.lo = k1;
  rise.hi = k2;
  rise.c0 = 1 - s * s / A2;
  rise.c1 = 4 * s / A2;
  rise.c2 = -4 / A2;
  out.push_back(rise);

  if (k2 != k3) {
    Piece mid;
    mid.lo = k2;
    mid.hi = k3;
    if (b - a < d - c) {  // (2d + a + b − 4p) / 2(d − c)
      mid.c0 = (2 * d + a + b) / (2 * (d - c));
      mid.c1 = Rational(-4) / (2 * (d - c));
    } else {  // (2b + c + d − 4p) / 2(b − a)
      mid.c0 = (2 * b + c + d) / (2 * (b - a));
      mid.c1 = Rational(-4) / (2 * (b - a));
    }
    out.push_back(mid);
  }

  Piece fall;  // (u² − 4up + 4p²)/2A
  fall.lo = k3;
  fall.hi = k4;
  fall.c0 = u * u / A2;
  fall.c1 = -4 * u / A2;
  fall.c2 = 4 / A2;
  out.push_back(fall);

  out.push_back(constant(k4, std::nullopt, 0));
  for (auto& pc : out) {
    pc.c0.canonicalize();
    pc.c1.canonicalize();
    pc.c2.canonicalize();
  }
  return out;
}

void require_intervals(const std::vector<PrototypeRegion>& regions) {
  if (regions.empty()) throw Error(ErrorCode::Invalid, "no prototype regions");
  for (const auto& r : regions)
    if (!r.is_interval) throw Error(ErrorCode::RegionMismatch, "region " + r.name + " is not an interval");
  for (size_t i = 0; i < regions.size(); ++i) {
    if (!(regions[i].low < regions[i].high))
      throw Error(ErrorCode::Invalid, "region " + regions[i].name + " needs low < high");
    if (i + 1 < regions.size() && !(regions[i].high < regions[i + 1].low))
      throw Error(ErrorCode::Invalid, "regions " + regions[i].name + " and " + regions[i + 1].name +
                                          " overlap or are out of order");
  }
}

// S_i: degree that p lies left of the boundary between region i and i+1.
std::vector<std::vector<Piece>> boundaries(const std::vector<PrototypeRegion>& regions) {
  std::vector<std::vector<Piece>> out;
  for (size_t i = 0; i + 1 < regions.size(); ++i)
    out.push_back(pair_pieces(regions[i].low, regions[i].high, regions[i + 1].low, regions[i + 1].high));
  return out;
}

// f − g as one piecewise function over the union of breakpoints.
std::vector<Piece> subtract(const std::vector<Piece>& f, const std::vector<Piece>& g) {
  std::set<Rational> cuts;
  for (const auto* ps : {&f, &g})
    for (const auto& pc : *ps) {
      if (pc.lo) cuts.insert(*pc.lo);
      if (pc.hi) cuts.insert(*pc.hi);
    }
  std::vector<Rational> xs(cuts.begin(), cuts.end());
  auto poly_at = [](const std::vector<Piece>& ps, const Rational& probe) {
    for (const auto& pc : ps)
      if (in_piece(pc, probe)) return pc;
    return Piece{};
  };
  std::vector<Piece> out;
  auto emit = [&](std::optional<Rational> lo, std::optional<Rational> hi, const Rational& probe) {
    Piece a = poly_at(f, probe), b = poly_at(g, probe);
    Piece pc;
    pc.lo = std::move(lo);
    pc.hi = std::move(hi);
    pc.c0 = a.c0 - b.c0;
    pc.c1 = a.c1 - b.c1;
    pc.c2 = a.c2 - b.c2;
    if (!out.empty() && out.back().c0 == pc.c0 && out.back().c1 == pc.c1 && out.back().c2 == pc.c2)
      out.back().hi = pc.hi;
    else
      out.push_back(pc);
  };
  if (xs.empty()) {
    emit(std::nullopt, std::nullopt, 0);
    return out;
  }
  emit(std::nullopt, xs.front(), xs.front() - 1);
  for (size_t i = 0; i + 1 < xs.size(); ++i) emit(xs[i], xs[i + 1], (xs[i] + xs[i + 1]) / 2);
  emit(xs.back(), std::nullopt, xs.back() + 1);
  return out;
}

}  // namespace

std::pair<Rational, Rational> membership_interval_pair(const Rational& p, const Rational& a, const Rational& b,
                                                       const Rational& c, const Rational& d) {
  Rational m = eval(pair_pieces(a, b, c, d), p);
  m.canonicalize();
  Rational r = 1 - m;
  r.canonicalize();
  return {m, r};
}

Degrees membership_intervals(const Rational& p, const std::vector<PrototypeRegion>& regions) {
  require_intervals(regions);
  auto S = boundaries(regions);
  Degrees out;
  Rational prev = 0;
  for (size_t i = 0; i < regions.size(); ++i) {
    Rational cur = i < S.size() ? eval(S[i], p) : Rational(1);
    Rational deg = cur - prev;
    deg.canonicalize();
    out.emplace_back(regions[i].name, deg);
    prev = cur;
  }
  return out;
}

std::vector<MembershipFunction> derive_membership_function(const std::vector<PrototypeRegion>& regions) {
  require_intervals(regions);
  auto S = boundaries(regions);
  const std::vector<Piece> zero{constant(std::nullopt, std::nullopt, 0)};
  const std::vector<Piece> one{constant(std::nullopt, std::nullopt, 1)};
  std::vector<MembershipFunction> out;
  for (size_t i = 0; i < regions.size(); ++i) {
    const auto& right = i < S.size() ? S[i] : one;
    const auto& left = i > 0 ? S[i - 1] : zero;
    out.push_back({regions[i].name, subtract(right, left)});
  }
  return out;
}

Rational MembershipFunction::operator()(const Rational& p) const {
  Rational v = eval(pieces, p);
  v.canonicalize();
  return v;
}

std::vector<Rational> MembershipFunction::breakpoints() const {
  std::vector<Rational> out;
  for (size_t i = 0; i + 1 < pieces.size(); ++i) out.push_back(*pieces[i].hi);
  return out;
}

Degrees membership_points(const Rational& p, const std::vector<PrototypeRegion>& regions, uint64_t cap) {
  if (regions.empty()) throw Error(ErrorCode::Invalid, "no prototype regions");
  uint64_t total = 1;
  for (const auto& r : regions) {
    if (r.is_interval) throw Error(ErrorCode::RegionMismatch, "region " + r.name + " is not a point set");
    if (r.points.empty()) throw Error(ErrorCode::Invalid, "region " + r.name + " has no prototypes");
    if (total > cap / r.points.size()) total = cap + 1;
    else total *= r.points.size();
  }
  if (total > cap)
    throw Error(ErrorCode::TooManyCompletions,
                "more than " + std::to_string(cap) + " completions; raise the cap or use intervals");

  std::vector<std::vector<Rational>> pts;
  for (size_t i = 0; i < regions.size(); ++i) {
    auto v = regions[i].points;
    std::sort(v.begin(), v.end());
    if (i > 0 && !(pts.back().back() < v.front()))
      throw Error(ErrorCode::Invalid, "prototype sets of " + regions[i - 1].name + " and " + regions[i].name +
                                          " interleave");
    pts.push_back(std::move(v));
  }

  std::vector<uint64_t> hits(regions.size(), 0);
  std::vector<size_t> idx(regions.size(), 0);
  while (true) {
    // nearest selected prototype, strictly
    size_t best = 0;
    Rational bd = abs(p - pts[0][idx[0]]);
    bool tie = false;
    for (size_t i = 1; i < regions.size(); ++i) {
      Rational di = abs(p - pts[i][idx[i]]);
      if (di < bd) {
        bd = di;
        best = i;
        tie = false;
      } else if (di == bd) {
        tie = true;
      }
    }
    if (!tie) ++hits[best];
    size_t k = 0;
    while (k < idx.size() && ++idx[k] == pts[k].size()) idx[k++] = 0;
    if (k == idx.size()) break;
  }
  Degrees out;
  for (size_t i = 0; i < regions.size(); ++i) {
    Rational r(static_cast<unsigned long>(hits[i]), static_cast<unsigned long>(total));
    r.canonicalize();
    out.emplace_back(regions[i].name, r);
  }
  return out;
}

Degrees membership(const Rational& p, const QualitySpace& space, uint64_t cap) {
  if (space.regions.empty()) throw Error(ErrorCode::Invalid, "quality space " + space.quality + " has no regions");
  bool intervals = space.regions.front().is_interval;
  for (const auto& r : space.regions)
    if (r.is_interval != intervals)
      throw Error(ErrorCode::RegionMismatch, "quality space " + space.quality + " mixes points and intervals");
  return intervals ? membership_intervals(p, space.regions) : membership_points(p, space.regions, cap);
}

Rational satisfaction_degree(const Element& qgc, const Rational& value, const QualitySpace& space,
                             const std::string& target, uint64_t cap) {
  std::string name = target;
  if (name.empty()) {
    const auto* q = qgc.quality();
    const auto* nr = q ? std::get_if<NamedRegion>(&q->region) : nullptr;
    if (!nr) throw Error(ErrorCode::NotAQuality, qgc.id + " does not name a quality region");
    name = nr->name;
  }
  for (const auto& [region, deg] : membership(value, space, cap))
    if (region == name) return deg;
  throw Error(ErrorCode::UnknownRegion, "region " + name + " is not defined for " + space.quality);
}

}  // namespace desiree
