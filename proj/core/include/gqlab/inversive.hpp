#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "gqlab/bitset.hpp"
#include "gqlab/dual_net.hpp"
#include "gqlab/incidence.hpp"
#include "gqlab/symmetry.hpp"

namespace gqlab {

// Circle geometry (P, C, gnarl): points, circles as point sets of size >= 3,
// and one marked point per circle.  Two circles touch when they share exactly
// one point.  Instances produced by build_circle_geometry satisfy the
// structural invariants; mutated instances may break any of them on purpose,
// so every checker below treats its input as raw data.
struct CircleGeometry {
  std::size_t n = 0;                       // point count
  std::vector<DynBitset> circles;          // n-bit point sets
  std::vector<std::vector<uint32_t>> circle_pts;  // sorted ids, kept in sync
  std::vector<uint32_t> gnarl;             // circle -> marked point
  std::vector<DynBitset> at;               // point -> circles through it
  std::vector<std::string> point_labels;   // empty when abstract
  std::vector<std::size_t> ambient_point;  // source quadrangle point ids
  std::vector<std::size_t> ambient_source; // circle -> defining outside point

  std::size_t points() const { return n; }
  std::size_t size() const { return circles.size(); }
  std::string point_name(std::size_t i) const;
  // -1 when the circles do not touch, else the single common point.
  int touch_point(std::size_t c, std::size_t d) const;
  // Recomputes circle_pts and at from circles; call after editing circles.
  void rebuild_index();
};

// One circle per point x of S outside the absolute set: the absolute points
// collinear with x, marked at the unique one lying on the image line of x.
// Throws std::runtime_error when two outside points cut the same set, when a
// circle has fewer than 3 points, or when the mark is not unique.
CircleGeometry build_circle_geometry(const IncidenceStructure& S, const Polarity& rho);

enum class InvAxiom : uint8_t { MP1, MP1p, MP2, CH1, CH2, ST1, ST2, TR, F };
inline constexpr std::array<InvAxiom, 9> kAllInvAxioms = {
    InvAxiom::MP1, InvAxiom::MP1p, InvAxiom::MP2, InvAxiom::CH1, InvAxiom::CH2,
    InvAxiom::ST1, InvAxiom::ST2,  InvAxiom::TR,  InvAxiom::F};

std::string axiom_name(InvAxiom ax);
std::optional<InvAxiom> axiom_from_name(std::string_view name);

struct InvWitness {
  std::vector<uint32_t> points;
  std::vector<uint32_t> circles;
  std::string note;
};

struct InvOutcome {
  bool pass = true;
  std::optional<InvWitness> cex;
  CheckStats stats;
};

// The nine statements, quantified literally:
//   MP1   three distinct points lie in at most one circle
//   MP1p  three distinct points lie in exactly one circle
//   MP2   for x in C, y off C there is a unique circle through y touching C at x
//   CH1   no three circles touch pairwise in pairwise distinct points
//   CH2   of the circles through two points off C, none, one, or all touch C
//   ST1   for x != y there is a unique circle through x marked at y
//   ST2   for x off C at most one circle through x and the mark of C has its
//         own mark on C away from the mark of C (the circle marked at the
//         mark of C itself always qualifies, so it is excluded)
//   TR    for x, y on C apart from its mark m, and D through m with a
//         different mark: over the circles E != C through x and m cutting D in
//         m and one more point z, the pairs (circle through z touching C at m,
//         circle through y touching E at m) have all their intersections
//         inside one circle through m
//   F     for x1, x2, x3 pairwise cocircular with x but not jointly, a point
//         y cocircular with {x,x1} and {x,x2} but not with {x,x1,x2} jointly
//         is cocircular with {x,x3}
// Exhaustive when the tuple space fits the budget (or opt.exhaustive);
// otherwise seeded sampling.  The reported counterexample is the first in
// scan order, which is deterministic either way.
InvOutcome check_axiom(const CircleGeometry& G, InvAxiom ax, const CheckOptions& opt = {});

struct InvReport {
  std::array<InvOutcome, 9> outcomes;  // indexed like kAllInvAxioms
  bool all_pass = true;
  const InvOutcome& operator[](InvAxiom ax) const {
    return outcomes[std::size_t(ax)];
  }
};

InvReport check_all_axioms(const CircleGeometry& G, const CheckOptions& opt = {});

// Exhaustive consequences of the axioms, checked directly:
//   touch_propagation   C and E touching D at the same point touch each other
//                       there
//   unique_gnarl_secant for x off C, exactly one circle through x and the
//                       mark of C has its mark on C and different from C's
//   gnarl_touch         touching a circle at its mark forces equal marks
struct InvLemmas {
  InvOutcome touch_propagation;
  InvOutcome unique_gnarl_secant;
  InvOutcome gnarl_touch;
  bool all_pass = true;
};

InvLemmas check_circle_lemmas(const CircleGeometry& G);

// Single-element edits used to probe checker sensitivity.  GnarlSwap moves a
// circle's mark to another of its points; FlagRemove deletes one point from
// one circle; FlagAdd inserts an absent point.  Mutants bypass construction
// validation by design.
enum class MutationKind : uint8_t { GnarlSwap, FlagRemove, FlagAdd };

struct Mutation {
  MutationKind kind = MutationKind::GnarlSwap;
  uint32_t circle = 0;
  uint32_t point = 0;  // new mark / removed point / added point
};

std::vector<Mutation> enumerate_mutations(const CircleGeometry& G, MutationKind kind);
CircleGeometry apply_mutation(const CircleGeometry& G, const Mutation& m);
std::string describe_mutation(const CircleGeometry& G, const Mutation& m);

// "CG v1" text format:
//   # comment
//   point <id> [label]
//   circle <id> <pid>... gnarl <pid>
// Point ids dense from 0; circles ascending; the canonical serialization
// round-trips byte for byte.
std::string serialize_circle_geometry(const CircleGeometry& G);
CircleGeometry parse_circle_geometry(std::istream& in);  // throws ParseError

}  // namespace gqlab
