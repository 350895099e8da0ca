#include <stdexcept>
#include "doctest.h"
#include "gqlab/coordinates.hpp"
#include "gqlab/incidence.hpp"

using namespace gqlab;

namespace {

IncidenceStructure fano() {
  static const int L[7][3] = {{0, 1, 2}, {0, 3, 4}, {0, 5, 6}, {1, 3, 5},
                              {1, 4, 6}, {2, 3, 6}, {2, 4, 5}};
  IncidenceStructure S(7, 7);
  for (int l = 0; l < 7; ++l)
    for (int j = 0; j < 3; ++j) S.add_flag(std::size_t(L[l][j]), std::size_t(l));
  S.freeze();
  return S;
}

// Affine plane of order 3: degrees 4, line size 3, no digons.
IncidenceStructure ag23() {
  IncidenceStructure S(9, 12);
  std::size_t l = 0;
  for (std::size_t c = 0; c < 3; ++c, ++l)
    for (std::size_t y = 0; y < 3; ++y) S.add_flag(c * 3 + y, l);
  for (std::size_t m = 0; m < 3; ++m)
    for (std::size_t b = 0; b < 3; ++b, ++l)
      for (std::size_t x = 0; x < 3; ++x) S.add_flag(x * 3 + (m * x + b) % 3, l);
  S.freeze();
  return S;
}

IncidenceStructure disjoint_union(const IncidenceStructure& A,
                                  const IncidenceStructure& B) {
  IncidenceStructure S(A.points() + B.points(), A.lines() + B.lines());
  for (std::size_t p = 0; p < A.points(); ++p)
    A.point_lines(p).for_each([&](std::size_t l) { S.add_flag(p, l); });
  for (std::size_t p = 0; p < B.points(); ++p)
    B.point_lines(p).for_each(
        [&](std::size_t l) { S.add_flag(A.points() + p, A.lines() + l); });
  S.freeze();
  return S;
}

}  // namespace

TEST_CASE("the symplectic quadrangle over GF(2) certifies as (2,2)") {
  SymplecticGq W = build_symplectic(Gf2n(1));
  CHECK(W.S.points() == 15);
  CHECK(W.S.lines() == 15);
  GqResult r = verify_gq(W.S, 1);
  REQUIRE(gq_ok(r));
  const GQCertificate& c = std::get<GQCertificate>(r);
  CHECK(c.s == 2);
  CHECK(c.t == 2);
  CHECK(c.pair_axiom);
  CHECK(c.thick);
  CHECK(c.projection);

  // self-dual: the role swap certifies identically
  GqResult rd = verify_gq(W.S.dual(), 1);
  REQUIRE(gq_ok(rd));
  CHECK(std::get<GQCertificate>(rd).s == 2);
}

TEST_CASE("violations are reported in severity order") {
  SUBCASE("empty") {
    IncidenceStructure S(0, 0);
    S.freeze();
    GqResult r = verify_gq(S, 1);
    REQUIRE_FALSE(gq_ok(r));
    CHECK(std::get<GqViolation>(r).kind == GqViolation::Kind::Empty);
  }
  SUBCASE("digon") {
    IncidenceStructure S(2, 2);
    for (std::size_t p = 0; p < 2; ++p)
      for (std::size_t l = 0; l < 2; ++l) S.add_flag(p, l);
    S.freeze();
    GqResult r = verify_gq(S, 1);
    REQUIRE_FALSE(gq_ok(r));
    const GqViolation& v = std::get<GqViolation>(r);
    CHECK(v.kind == GqViolation::Kind::RepeatedPair);
    CHECK(v.a == 0);
    CHECK(v.b == 1);
    CHECK_FALSE(v.describe(S).empty());
  }
  SUBCASE("degree below two") {
    IncidenceStructure S(2, 1);
    S.add_flag(0, 0);
    S.add_flag(1, 0);
    S.freeze();
    GqResult r = verify_gq(S, 1);
    REQUIRE_FALSE(gq_ok(r));
    const GqViolation& v = std::get<GqViolation>(r);
    CHECK(v.kind == GqViolation::Kind::LowDegree);
    CHECK(v.on_points);
  }
  SUBCASE("grid points are thin") {
    IncidenceStructure S(9, 6);
    for (std::size_t r = 0; r < 3; ++r)
      for (std::size_t c = 0; c < 3; ++c) {
        S.add_flag(r * 3 + c, r);
        S.add_flag(r * 3 + c, 3 + c);
      }
    S.freeze();
    GqResult r = verify_gq(S, 1);
    REQUIRE_FALSE(gq_ok(r));
    const GqViolation& v = std::get<GqViolation>(r);
    CHECK(v.kind == GqViolation::Kind::Thin);
    CHECK(v.on_points);
  }
  SUBCASE("mixed line sizes") {
    // dual of fano + ag23: line sizes become the old degrees 3 vs 4
    GqResult r = verify_gq(disjoint_union(fano(), ag23()).dual(), 1);
    REQUIRE_FALSE(gq_ok(r));
    CHECK(std::get<GqViolation>(r).kind == GqViolation::Kind::UnevenLineSize);
  }
  SUBCASE("mixed point degrees") {
    GqResult r = verify_gq(disjoint_union(fano(), ag23()), 1);
    REQUIRE_FALSE(gq_ok(r));
    CHECK(std::get<GqViolation>(r).kind == GqViolation::Kind::UnevenPointDegree);
  }
  SUBCASE("a plane fails projection with the full line as witness count") {
    GqResult r = verify_gq(fano(), 1);
    REQUIRE_FALSE(gq_ok(r));
    const GqViolation& v = std::get<GqViolation>(r);
    CHECK(v.kind == GqViolation::Kind::Projection);
    CHECK(v.count == 3);
  }
}

TEST_CASE("mutation discipline around freeze") {
  IncidenceStructure S(2, 2);
  CHECK_THROWS_AS(S.adj(0), std::logic_error);  // caches need freeze()
  S.add_flag(0, 0);
  CHECK_THROWS_AS(S.add_flag(5, 0), std::out_of_range);
  S.freeze();
  CHECK_THROWS_AS(S.add_flag(1, 1), std::logic_error);
  CHECK(S.adj(0).test(0));  // collinearity includes the point itself
}

TEST_CASE("perp and span sizes in W(2)") {
  SymplecticGq W = build_symplectic(Gf2n(1));
  const IncidenceStructure& S = W.S;

  std::size_t x = 0;
  int nb = S.adj(x).next(1);  // some neighbour
  REQUIRE(nb > 0);
  std::size_t y_coll = std::size_t(nb);
  std::size_t y_opp = 0;
  for (std::size_t y = 1; y < S.points(); ++y)
    if (!S.adj(x).test(y)) { y_opp = y; break; }
  REQUIRE(y_opp != 0);

  PointSetHandle pc = perp(S, x, y_coll);
  CHECK(pc.kind == TraceKind::Perp);
  CHECK(pc.size() == 3);  // the line through them, s+1 points
  CHECK(span(S, x, y_coll).size() == 3);

  PointSetHandle po = perp(S, x, y_opp);
  CHECK(po.size() == 3);  // t+1 centers
  PointSetHandle so = span(S, x, y_opp);
  CHECK(so.kind == TraceKind::Span);
  CHECK(so.size() == 3);  // regular pair: span fills up to t+1

  CHECK(perp_of_set(S, po.pts) == so.pts);
  CHECK_THROWS_AS(perp(S, x, x), std::invalid_argument);
}

TEST_CASE("every point and line of W(2) is regular, both test forms agree") {
  SymplecticGq W = build_symplectic(Gf2n(1));
  for (std::size_t x = 0; x < W.S.points(); ++x) {
    bool fast = is_regular_point(W.S, x);
    CHECK(fast);
    CHECK(fast == is_regular_point_by_search(W.S, x));
  }
  for (std::size_t l = 0; l < W.S.lines(); ++l) CHECK(is_regular_line(W.S, l));
}

TEST_CASE("triads in W(2) are centric; collinear triples are refused") {
  SymplecticGq W = build_symplectic(Gf2n(1));
  const IncidenceStructure& S = W.S;
  std::size_t found = 0;
  for (std::size_t x = 0; x < S.points() && found < 4; ++x)
    for (std::size_t y = x + 1; y < S.points() && found < 4; ++y) {
      if (S.adj(x).test(y)) continue;
      for (std::size_t z = y + 1; z < S.points() && found < 4; ++z) {
        if (S.adj(x).test(z) || S.adj(y).test(z)) continue;
        PointSetHandle c = triad_centers(S, x, y, z);
        CHECK(c.size() >= 1);
        CHECK(c.size() % 2 == 1);  // 1 or 3 when s = t = 2
        ++found;
      }
    }
  CHECK(found == 4);

  const DynBitset& row = S.line_points(0);
  int a = row.next(0);
  int b = row.next(std::size_t(a) + 1);
  int c = row.next(std::size_t(b) + 1);
  REQUIRE(c > 0);
  CHECK_THROWS_AS(
      triad_centers(S, std::size_t(a), std::size_t(b), std::size_t(c)),
      std::invalid_argument);
}

TEST_CASE("projective points carry Fano planes") {
  SymplecticGq W = build_symplectic(Gf2n(1));
  for (std::size_t x = 0; x < W.S.points(); ++x) CHECK(is_projective_point(W.S, x));

  IncidenceStructure P = perp_plane(W.S, 0);
  CHECK(P.points() == 7);
  CHECK(P.lines() == 7);
  PlaneResult pr = verify_projective_plane(P);
  CHECK(pr.ok);
  CHECK(pr.order == 2);
  CHECK(pr.why.empty());

  // a quadrangle is nothing like a plane
  PlaneResult bad = verify_projective_plane(W.S);
  CHECK_FALSE(bad.ok);
  CHECK_FALSE(bad.why.empty());
}
