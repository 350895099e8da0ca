#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "gqlab/dual_net.hpp"
#include "gqlab/incidence.hpp"
#include "gqlab/inversive.hpp"
#include "gqlab/symmetry.hpp"

namespace gqlab {

// Point-line geometry rebuilt from a circle geometry.  Both sides carry the
// same id space: ids below `base_points` name the original points, ids at
// `base_points + c` name circle c.  Line ids mirror point ids, so the map
// sending every element to its same-id partner is a polarity of the result.
struct Reconstruction {
  IncidenceStructure S;
  Polarity rho;                // identity on id values, order 2 by mirroring
  std::size_t base_points = 0;

  std::size_t point_of_base(std::size_t x) const { return x; }
  std::size_t point_of_circle(std::size_t c) const { return base_points + c; }
  bool is_base(std::size_t id) const { return id < base_points; }
};

// Builds the point-line geometry over P* = L* = points-plus-circles:
//   point x  I  line y   iff x == y,
//   point x  I  line C   iff the mark of C is x (and dually),
//   point C  I  line D   iff each mark lies on the other circle and the
//                             marks differ.
// Requires the one-circle-per-triple, touching-circle, chain and mark axioms
// to hold on G (the exact-circle strengthening is not needed); throws
// std::invalid_argument naming the first failing axiom otherwise.  The
// returned rho is verified, and the self-incident elements are checked to be
// exactly the original points before returning.
Reconstruction reconstruct(const CircleGeometry& G);

struct ClauseOutcome {
  bool pass = true;
  std::size_t a = 0, b = 0;    // offending ids when pass is false
  std::string note;
};

// Collinearity shape of the rebuilt geometry, checked exhaustively against
// the source circle geometry:
//   base_pairs    distinct original points are never collinear,
//   base_circle   point x is collinear with circle C iff x lies on C,
//   circle_pairs  circles are collinear iff they touch,
//   unique_joins  two distinct points share at most one line.
struct CollinearityReport {
  ClauseOutcome base_pairs, base_circle, circle_pairs, unique_joins;
  bool all_pass = true;
};
CollinearityReport check_collinearity(const CircleGeometry& G,
                                      const Reconstruction& R);

// Canonical isomorphism from the source quadrangle onto its reconstruction:
// an absolute point maps to its own id in G, any other point y maps to the
// circle cut by y, and a line maps to the mirror of the image of its polar
// point.  Every flag is re-verified; on failure `ok` is false and `why`
// names the first flag that is not preserved.
struct NaturalIso {
  bool ok = false;
  std::vector<std::size_t> point_map, line_map;
  std::string why;
};
NaturalIso natural_isomorphism(const IncidenceStructure& src,
                               const Polarity& src_rho,
                               const CircleGeometry& G,
                               const Reconstruction& R);

// Structure lemmas for the rebuilt geometry:
//   triangle_free      three pairwise-collinear points share a line,
//   distance_three     every point sees every line through some collinear
//                      point (incidence-graph diameter at most three),
//   absolute_regular   every self-paired point and line is regular,
//   span_absolutes     a span containing a self-paired point contains
//                      exactly two of them.
// The first three run exhaustively; span_absolutes honours opt (budget 0 or
// exhaustive means every opposite pair).
struct ReconLemmas {
  ClauseOutcome triangle_free, distance_three, absolute_regular,
      span_absolutes;
  CheckStats span_stats;
  bool all_pass = true;
};
ReconLemmas check_reconstruction_lemmas(const Reconstruction& R,
                                        const CheckOptions& opt = {});

// Confirms that the dual net of the reconstruction at original point x has
// exactly the advertised shape: its points are the circles containing x,
// its blocks are cut by the original points other than x (block of y = the
// circles through x and y, each arising from such a perp and nothing else),
// and the line mirroring x itself is vertical with class the circles marked
// at x.  `why` names the first mismatch.
struct DualNetMatch {
  bool pass = true;
  std::string why;
};
DualNetMatch check_dual_net_description(const CircleGeometry& G,
                                        const Reconstruction& R,
                                        std::size_t x);

}  // namespace gqlab
