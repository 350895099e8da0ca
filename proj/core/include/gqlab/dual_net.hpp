#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "gqlab/bitset.hpp"
#include "gqlab/incidence.hpp"

namespace gqlab {

// The trace geometry at a regular point x: net points are the points collinear
// with x (x excluded), net blocks are the perps {x,y}^perp over the points y
// opposite x, one block per distinct set.  Verticals are the punctured lines
// through x; they partition the net points and every block crosses every
// vertical exactly once.  The completion adds one point on all verticals.
struct DualNet {
  std::size_t center = 0;
  std::vector<std::size_t> pts;           // net index -> ambient point id, ascending
  std::vector<std::ptrdiff_t> net_index;  // ambient point id -> net index, -1 off net
  std::vector<DynBitset> blocks;          // bitsets over net indices, canonical order
  std::vector<DynBitset> verticals;       // one per ambient line through the center
  std::vector<std::size_t> vertical_lines;  // vertical class -> ambient line id
  std::vector<int> vclass;                // net index -> vertical class
  std::vector<std::string> labels;        // net index -> ambient point name

  // vertical class of an ambient line through the center, -1 otherwise
  int vertical_of_line(std::size_t ambient_line) const;

  // blocks x blocks: -1 disjoint, -2 two or more common points, else the sole
  // common net point.
  std::vector<int32_t> meet_table;
  // pts x pts: -3 same vertical class (or equal), -1 no common block, -2 two
  // or more common blocks, else the sole common block.
  std::vector<int32_t> join_table;
  // verticals x blocks: the sole crossing point; transversality is validated
  // during extraction.
  std::vector<int32_t> vmeet_table;

  std::size_t points() const { return pts.size(); }
  int32_t meet(std::size_t b1, std::size_t b2) const {
    return meet_table[b1 * blocks.size() + b2];
  }
  int32_t join(std::size_t u, std::size_t v) const {
    return join_table[u * pts.size() + v];
  }
  int32_t vmeet(std::size_t v, std::size_t b) const {
    return vmeet_table[v * blocks.size() + b];
  }

  // Points and blocks only, no verticals.
  IncidenceStructure net_structure() const;
  // Adds the point at infinity and the extended verticals; for a projective
  // center this is a projective plane.
  IncidenceStructure completion() const;
};

// Requires a frozen structure and a regular point; throws std::invalid_argument
// otherwise.  The dual-net axiom (one non-collinear point per off-block point)
// and the transversal property are verified exhaustively during extraction and
// fail hard, since a regular center guarantees both.
DualNet extract_dual_net(const IncidenceStructure& S, std::size_t x);

struct CheckOptions {
  std::size_t budget = SIZE_MAX;  // tuple cap when not exhaustive
  uint64_t seed = 0;              // sampling seed
  bool exhaustive = false;        // ignore the budget
  unsigned threads = 1;
};

struct CheckStats {
  std::size_t checked = 0;   // tuples actually evaluated
  std::size_t total = 0;     // size of the full tuple space
  bool exhaustive = true;
};

// Triangle of blocks: sides pairwise meet in three distinct points.
struct NetTriangle {
  std::array<uint32_t, 3> sides;
  std::array<uint32_t, 3> vertices;  // v[0]=s0^s1, v[1]=s0^s2, v[2]=s1^s2
};

struct VyCounterexample {
  NetTriangle triangle;
  std::size_t line;   // block id, or vertical id when vertical is set
  bool vertical = false;
  std::array<int, 2> met_sides;      // indices into triangle.sides
  std::array<uint32_t, 2> met_points;
  int missed_side = 0;
};

// If a line meets two sides of a proper triangle in two distinct points then
// it meets the third side.  Sides and lines range over blocks; the stated
// axiom is quantified over the net, so the variant where the line is a
// vertical of the completion is evaluated too but reported separately.
struct VyOutcome {
  bool pass = true;
  std::optional<VyCounterexample> cex;
  CheckStats stats;
  bool vertical_pass = true;
  std::optional<VyCounterexample> vertical_cex;
  CheckStats vertical_stats;
};

VyOutcome check_vy(const DualNet& net, const CheckOptions& opt = {});

// Point triangle for perspectivity checks: vertices lie in three distinct
// vertical classes, each side is the unique joining block.
struct LdCounterexample {
  std::array<uint32_t, 3> verts_a, verts_b;  // verts_b[i] shares a class with verts_a[i]
  std::array<uint32_t, 3> sides_a, sides_b;  // joining blocks, pair order 01, 02, 12
  int vertical = 0;                          // class of the vertical V
  std::array<int, 2> met_pairs;              // side pairs meeting on V
  int failed_pair = 0;
};

struct LdOutcome {
  bool pass = true;
  std::optional<LdCounterexample> cex;
  CheckStats stats;
};

// Two triangles in perspective from the completion point (corresponding
// vertices share a vertical class): if two pairs of corresponding sides meet
// on the vertical V, so does the third.  A pair meets on V when its unique
// common point lies on V; coincident sides have none.  vertical = -1
// quantifies over all classes.
LdOutcome check_ld(const DualNet& net, int vertical = -1, const CheckOptions& opt = {});

// The plane generated by two crossing blocks: blocks meeting both L and M in
// two distinct points, plus the blocks through L^M that meet one of those,
// plus all verticals, on the covered points and the completion point.
struct DeltaPlane {
  IncidenceStructure plane;
  std::vector<std::ptrdiff_t> plane_point;  // plane pt -> net pt, -1 = infinity
  std::vector<std::ptrdiff_t> plane_block;  // plane line -> block id, -1-v for vertical v
};

// Throws std::invalid_argument when L and M do not meet in a point, and
// std::runtime_error quoting the counterexample when the net fails the
// triangle axiom (the construction is only a plane under it).
DeltaPlane build_delta_plane(const DualNet& net, std::size_t L, std::size_t M,
                             const CheckOptions& opt = {});

// The perp geometry at a point p: points are p^perp (p included), blocks the
// traces {p,y}^perp over all other points y.  For a projective p this is a
// projective plane with p on every former line through p.
struct PerpGeometry {
  std::size_t center = 0;
  std::vector<std::size_t> pts;     // ambient ids, ascending
  std::vector<DynBitset> blocks;    // ambient-coordinate traces, canonical order
  IncidenceStructure plane;         // reindexed

  std::ptrdiff_t point_index(std::size_t ambient) const;
  std::ptrdiff_t block_index(const DynBitset& ambient_set) const;
};

PerpGeometry build_perp_geometry(const IncidenceStructure& S, std::size_t p);

// Duality between the perp geometries of opposite projective points p and q:
// a point x goes to the trace {q,x}^perp, a block goes to the unique point
// collinear with q and with the whole block.  Verified on construction to be
// an incidence-reversing bijection; violations throw std::logic_error.
struct ThetaIso {
  std::size_t p = 0, q = 0;
  PerpGeometry dom, cod;
  std::vector<std::size_t> point_to_block;  // dom point index -> cod block index
  std::vector<std::size_t> block_to_point;  // dom block index -> cod point index
};

ThetaIso theta_iso(const IncidenceStructure& S, std::size_t p, std::size_t q);

// Composition of two perp dualities through a middle point p3 opposite both
// centers: a collineation between the perp geometries of g1 and g2.
struct PhiMap {
  std::size_t via = 0;
  std::vector<std::size_t> point_image;  // g1 point index -> ambient point id
  std::vector<std::size_t> block_image;  // g1 block index -> g2 block index
};

PhiMap phi_map(const IncidenceStructure& S, const PerpGeometry& g1,
               const PerpGeometry& g2, std::size_t p3);

}  // namespace gqlab
