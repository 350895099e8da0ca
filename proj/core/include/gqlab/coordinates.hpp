#pragma once

#include "gqlab/gf2n.hpp"
#include "gqlab/incidence.hpp"
#include "gqlab/mixed.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace gqlab {

// Coordinate shapes of the symplectic quadrangle.  Points come as (inf), (a),
// (k,b), (a,l,a'); lines as [inf], [k], [a,l], [k,b,k'].  The slots x,y,z
// hold the coordinates in written order.
enum class CKind : std::uint8_t { Inf, One, Two, Three };

template <typename E>
struct CoordPoint {
  CKind kind = CKind::Inf;
  E x{}, y{}, z{};
  static CoordPoint inf() { return {}; }
  static CoordPoint one(E a) { return {CKind::One, std::move(a), E{}, E{}}; }
  static CoordPoint two(E k, E b) { return {CKind::Two, std::move(k), std::move(b), E{}}; }
  static CoordPoint three(E a, E l, E ap) {
    return {CKind::Three, std::move(a), std::move(l), std::move(ap)};
  }
  friend bool operator==(const CoordPoint&, const CoordPoint&) = default;
};

template <typename E>
struct CoordLine {
  CKind kind = CKind::Inf;
  E x{}, y{}, z{};
  static CoordLine inf() { return {}; }
  static CoordLine one(E k) { return {CKind::One, std::move(k), E{}, E{}}; }
  static CoordLine two(E a, E l) { return {CKind::Two, std::move(a), std::move(l), E{}}; }
  static CoordLine three(E k, E b, E kp) {
    return {CKind::Three, std::move(k), std::move(b), std::move(kp)};
  }
  friend bool operator==(const CoordLine&, const CoordLine&) = default;
};

template <typename E>
bool coord_less(CKind ak, const E& ax, const E& ay, const E& az, CKind bk,
                const E& bx, const E& by, const E& bz) {
  if (ak != bk) return ak < bk;
  if (ax != bx) return ax < bx;
  if (ay != by) return ay < by;
  return az < bz;
}
template <typename E>
bool operator<(const CoordPoint<E>& a, const CoordPoint<E>& b) {
  return coord_less(a.kind, a.x, a.y, a.z, b.kind, b.x, b.y, b.z);
}
template <typename E>
bool operator<(const CoordLine<E>& a, const CoordLine<E>& b) {
  return coord_less(a.kind, a.x, a.y, a.z, b.kind, b.x, b.y, b.z);
}

std::string to_string(const Gf2n& f, const CoordPoint<uint32_t>& p);
std::string to_string(const Gf2n& f, const CoordLine<uint32_t>& m);
std::string to_string(const CoordPoint<RatFn>& p);
std::string to_string(const CoordLine<RatFn>& m);

// Incidence, directly from the coordinate equations.  The hat chain
// (a,l,a') I [a,l] I (a) I [inf] I (inf) I [k] I (k,b) I [k,b,k'] covers the
// lower arities; between the two arity-3 shapes
//
//     a' = a k + b        k' = a^2 k + l - 2 a a'
//
// and the -2aa' term is zero here (characteristic 2).  This is the single
// evaluation site for these equations.
bool incident(const Gf2n& f, const CoordPoint<uint32_t>& p, const CoordLine<uint32_t>& m);

// Same, validating every coordinate against its declared space (a,a',b in L;
// k,k',l in L'); a coordinate outside its space throws std::invalid_argument
// naming the space.
bool incident(const FiniteMixed& tower, const CoordPoint<uint32_t>& p,
              const CoordLine<uint32_t>& m);
bool incident(const RationalMixed& tower, const CoordPoint<RatFn>& p,
              const CoordLine<RatFn>& m);

// W(q) with the canonical id layout: point 0 = (inf), 1..q = (a),
// 1+q..q+q^2 = (k,b) in k-major order, then (a,l,a') in (a,l,a')-major
// order; lines mirror this with [inf], [k], [a,l], [k,b,k'].  Labels carry
// the coordinates in hex.
struct SymplecticGq {
  Gf2n field;
  IncidenceStructure S;
  std::vector<CoordPoint<uint32_t>> point_coords;
  std::vector<CoordLine<uint32_t>> line_coords;

  std::size_t point_id(const CoordPoint<uint32_t>& p) const;
  std::size_t line_id(const CoordLine<uint32_t>& m) const;
};

SymplecticGq build_symplectic(const Gf2n& field);

// What a finite patch of an infinite mixed quadrangle ended up holding.
// Shells are materialized in arity order while the element budget lasts;
// whatever was skipped is recorded so a check can tell whether the patch
// could even contain its witnesses.
struct PatchReport {
  std::size_t scalar_count = 0;  // closure set size
  unsigned depth = 0;
  std::size_t budget = 0;
  bool arity2_points = false, arity2_lines = false;
  bool arity3_points = false, arity3_lines = false;
  std::vector<std::string> notes;
};

struct MixedPatch {
  RationalMixed tower;
  IncidenceStructure S;
  std::vector<CoordPoint<RatFn>> point_coords;
  std::vector<CoordLine<RatFn>> line_coords;
  std::vector<RatFn> scalars;  // the closure set, in discovery order
  PatchReport report;

  std::optional<std::size_t> point_id(const CoordPoint<RatFn>& p) const;
  std::optional<std::size_t> line_id(const CoordLine<RatFn>& m) const;
};

// Closes the generator scalars under +, *, / to `depth` rounds, then
// materializes every coordinate shape whose slots can be filled from the
// closure within the declared spaces, in arity order, while the total element
// count stays within budget.  Incidence is computed constructively (partner
// coordinates solved and looked up), never by all-pairs evaluation.  Empty
// generator set or a closure blowing the budget throws (BudgetError for the
// latter).  The patch is not a generalized quadrangle; it exists to host
// local witness configurations.
MixedPatch build_mixed_patch(const RationalMixed& tower, std::vector<RatFn> generators,
                             unsigned depth = 2, std::size_t budget = 100000);

// The perp T_{a,a'} = {(inf),(a,l,a')}^perp = {(a)} plus {(x, ax+a') : x in L'},
// which is independent of l.  These are the blocks of the dual net at (inf)
// in coordinate form, usable without materializing any patch.
struct SymBlock {
  RatFn a, ap;
};

// Meet of two distinct blocks: same a gives the point (a); different a meet
// exactly when x* = (a'+a~')/(a+a~) lies in L', at (x*, a x* + a').  Equal
// blocks throw std::invalid_argument.
std::optional<CoordPoint<RatFn>> block_meet(const RationalMixed& tower,
                                            const SymBlock& b1, const SymBlock& b2);

// The triangle T_{0,0}, T_{0,1}, T_{1,0} crossed by T_{u,uk'} with
// u = k/(1+k): the crossing meets the first two sides, and meets the third
// side exactly when k k' stays in L'.  Exact algebra; vy_holds records the
// membership verdict for the chosen k, k'.
struct VyWitnessReport {
  bool vy_holds = false;
  RatFn k, kprime, x_star;               // x_star = k * kprime
  SymBlock side_a, side_b, side_c;       // T00, T01, T10
  SymBlock crossing;                     // T_{u, u k'}
  CoordPoint<RatFn> meet_a, meet_b;      // crossing meets T00, T01
  std::optional<CoordPoint<RatFn>> meet_c;  // crossing vs T10
  std::string narrative;
};

VyWitnessReport mixed_vy_witness(const RationalMixed& tower);

}  // namespace gqlab
