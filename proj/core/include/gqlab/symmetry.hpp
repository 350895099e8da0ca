#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "gqlab/bitset.hpp"
#include "gqlab/coordinates.hpp"
#include "gqlab/dual_net.hpp"
#include "gqlab/incidence.hpp"

namespace gqlab {

// Incidence-preserving permutation pair.  Instances returned by this module
// are verified on every flag before they escape.
struct Collineation {
  std::vector<std::size_t> pmap;  // point id -> point id
  std::vector<std::size_t> lmap;  // line id -> line id

  bool is_identity() const;
  friend bool operator==(const Collineation&, const Collineation&) = default;
};

// first, then second
Collineation compose(const Collineation& first, const Collineation& second);
Collineation identity_collineation(const IncidenceStructure& S);

// Throws std::logic_error naming the first violated flag or the first
// non-bijective slot.
void verify_collineation(const IncidenceStructure& S, const Collineation& c);

// Incidence-reversing involution: applying the point map and then the line
// map (or the other way around) is the identity.
struct Polarity {
  std::vector<std::size_t> point_to_line;
  std::vector<std::size_t> line_to_point;
};

void verify_polarity(const IncidenceStructure& S, const Polarity& rho);

// Raised when the transport below cannot complete or its result fails
// verification; the message cites the obstruction, quoting a violated
// triangle pair when the dual net is the cause.
struct SymmetryError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Builds the collineation that fixes L pointwise, fixes every line meeting L,
// and sends a to aprime.  Requires a regular line L, a regular point p on L,
// and points a, aprime != p on a common line through p other than L.  Every
// image is forced: a point q collinear with p goes to the crossing of its
// line through p with the perp through aprime and b, where b is the point of
// L cut out by the perp through a and q; a line N opposite L goes to the
// line of the span of {L, N} through the image of the projection of p onto
// N; a remaining point goes to the crossing of its translated line with its
// unique line meeting L.  The result is verified on every flag, so a net
// violating the little Desargues condition cannot slip through; failures
// raise SymmetryError.
Collineation build_symmetry(const IncidenceStructure& S, std::size_t L,
                            std::size_t p, std::size_t a, std::size_t aprime);
// Same with a precomputed dual net at p (regularity of L is the caller's
// obligation here).
Collineation build_symmetry(const IncidenceStructure& S, std::size_t L,
                            std::size_t p, std::size_t a, std::size_t aprime,
                            const DualNet& net);

// All symmetries with axis L, built from one base point: the line size minus
// one of them, the identity included.  Throws SymmetryError when any single
// transport fails and std::invalid_argument when L is not regular or carries
// no regular point.
std::vector<Collineation> symmetries_about(const IncidenceStructure& S,
                                           std::size_t L);

// True when the symmetries about L form a group acting regularly on the span
// of {L, N} minus L itself, for a witness line N opposite L and for a second
// witness.  Transport failures count as false; a non-regular L throws
// std::invalid_argument.
bool is_axis_of_symmetry(const IncidenceStructure& S, std::size_t L);
// Dual statement at a point.
bool is_center_of_symmetry(const IncidenceStructure& S, std::size_t x);

// Coordinate polarity of the symplectic quadrangle: exists exactly when the
// field carries a square root of the Frobenius map (odd degree).  The maps
// raise coordinates to the half exponents slot by slot and are then gated
// exhaustively: incidence preservation over every point-line pair and order
// two; a gate failure is a std::logic_error.
std::optional<Polarity> find_polarity(const SymplecticGq& W);

struct AbsoluteElements {
  DynBitset points;  // x incident with its image line
  DynBitset lines;   // l incident with its image point
};

// Absolute elements of a polarity.  The absolute points must form an ovoid
// (every line carries exactly one); anything else is a std::runtime_error
// naming the offending line.
AbsoluteElements absolute_elements(const IncidenceStructure& S,
                                   const Polarity& rho);

struct CentricReport {
  bool pass = true;
  std::array<std::size_t, 3> witness{};  // sub point ids of an acentric triad
  CheckStats stats;
};

// Checks that every triad of the embedded subquadrangle (pairwise opposite
// in sub) has a center in S.  The embedding must be injective and preserve
// incidence both ways, and sub must be thick; violations are
// std::invalid_argument.
CentricReport check_centric_subquadrangle(const IncidenceStructure& S,
                                          const IncidenceStructure& sub,
                                          const std::vector<std::size_t>& point_embed,
                                          const std::vector<std::size_t>& line_embed,
                                          const CheckOptions& opt = {});

}  // namespace gqlab
