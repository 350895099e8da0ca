#include <stdexcept>
#include "doctest.h"
#include "gqlab/coordinates.hpp"
#include "gqlab/incidence.hpp"

using namespace gqlab;

namespace {

RationalMixed full_tower() {
  return RationalMixed::build(
      {RatFn::s(), RatFn::t()}, {RatFn::one()},
      {RatFn::one(), RatFn::s(), RatFn::t(), RatFn::s() * RatFn::t()});
}

RationalMixed proper_tower() {
  // L' = <1,s,t> misses the st class, the smallest strict drop
  return RationalMixed::build({RatFn::s(), RatFn::t()}, {RatFn::one()},
                              {RatFn::one(), RatFn::s(), RatFn::t()});
}

}  // namespace

TEST_CASE("element counts follow (q^2+1)(q+1) on both sides") {
  for (unsigned n : {1u, 2u, 3u}) {
    Gf2n f(n);
    unsigned q = f.order();
    SymplecticGq W = build_symplectic(f);
    std::size_t want = std::size_t(q * q + 1) * (q + 1);
    CHECK(W.S.points() == want);
    CHECK(W.S.lines() == want);
    CHECK(W.point_coords.size() == want);
    CHECK(W.line_coords.size() == want);
  }
}

TEST_CASE("structure flags agree with the coordinate equations everywhere") {
  for (unsigned n : {1u, 2u}) {
    Gf2n f(n);
    SymplecticGq W = build_symplectic(f);
    for (std::size_t p = 0; p < W.S.points(); ++p)
      for (std::size_t l = 0; l < W.S.lines(); ++l) {
        bool eq = incident(f, W.point_coords[p], W.line_coords[l]);
        if (eq != W.S.incident(p, l)) {
          CAPTURE(p);
          CAPTURE(l);
          FAIL_CHECK("coordinate equation disagrees with the stored flag");
        }
      }
  }
}

TEST_CASE("id layout round-trips through coordinate lookup") {
  SymplecticGq W = build_symplectic(Gf2n(2));
  CHECK(W.point_coords[0].kind == CKind::Inf);
  CHECK(W.point_id(CoordPoint<uint32_t>::inf()) == 0);
  CHECK(W.point_id(CoordPoint<uint32_t>::one(0)) == 1);
  // (k,b) block starts right after the q one-coordinate points, k-major
  unsigned q = W.field.order();
  CHECK(W.point_id(CoordPoint<uint32_t>::two(0, 0)) == 1 + q);
  CHECK(W.point_id(CoordPoint<uint32_t>::two(1, 0)) == 1 + q + q);
  for (std::size_t p = 0; p < W.S.points(); ++p)
    CHECK(W.point_id(W.point_coords[p]) == p);
  for (std::size_t l = 0; l < W.S.lines(); ++l)
    CHECK(W.line_id(W.line_coords[l]) == l);
}

TEST_CASE("tower-checked incidence accepts members and names the bad space") {
  RationalMixed tw = proper_tower();
  RatFn one = RatFn::one(), st = RatFn::s() * RatFn::t();
  CHECK(incident(tw, CoordPoint<RatFn>::three(one, one, one),
                 CoordLine<RatFn>::two(one, one)));
  try {
    incident(tw, CoordPoint<RatFn>::three(one, one, one),
             CoordLine<RatFn>::three(st, one, one));
    FAIL("coordinate outside L' must be rejected");
  } catch (const std::invalid_argument& e) {
    CHECK(std::string(e.what()).find("L'") != std::string::npos);
  }

  FiniteMixed fm = FiniteMixed::build(Gf2n(2), {2}, {1}, {1});
  const Gf2n& f = fm.field();
  uint32_t a = 2, k = 3, b = 1, l = 1;
  uint32_t ap = f.mul(a, k) ^ b;
  uint32_t kp = f.mul(f.mul(a, a), k) ^ l;
  CHECK(incident(fm, CoordPoint<uint32_t>::three(a, l, ap),
                 CoordLine<uint32_t>::three(k, b, kp)));
  CHECK_FALSE(incident(fm, CoordPoint<uint32_t>::three(a, l, ap),
                       CoordLine<uint32_t>::three(k, b, kp ^ 1)));
}

TEST_CASE("the {0,1} patch of the full tower is W(2) again") {
  MixedPatch patch = build_mixed_patch(full_tower(), {RatFn::one()});
  CHECK(patch.scalars.size() == 2);  // closure of {1} under +,*,/ adds 0
  CHECK(patch.report.arity3_points);
  CHECK(patch.report.arity3_lines);
  CHECK(patch.S.points() == 15);
  CHECK(patch.S.lines() == 15);

  GqResult r = verify_gq(patch.S, 1);
  REQUIRE(gq_ok(r));
  CHECK(std::get<GQCertificate>(r).s == 2);
  CHECK(std::get<GQCertificate>(r).t == 2);

  CHECK(patch.point_id(CoordPoint<RatFn>::inf()).has_value());
  for (std::size_t p = 0; p < patch.S.points(); ++p) {
    auto id = patch.point_id(patch.point_coords[p]);
    REQUIRE(id.has_value());
    CHECK(*id == p);
  }
}

TEST_CASE("patch construction rejects an empty generator set") {
  CHECK_THROWS_AS(build_mixed_patch(full_tower(), {}), std::invalid_argument);
}

TEST_CASE("block meets follow the x* membership rule") {
  RationalMixed tw = proper_tower();
  RatFn zero = RatFn::zero(), one = RatFn::one();
  SymBlock t00{zero, zero}, t01{zero, one}, t10{one, zero};

  // same a: the two perps share the one-coordinate point (a)
  auto m1 = block_meet(tw, t00, t01);
  REQUIRE(m1.has_value());
  CHECK(m1->kind == CKind::One);
  CHECK(m1->x == zero);

  // different a with x* = (0+0)/(0+1) = 0 in L'
  auto m2 = block_meet(tw, t00, t10);
  REQUIRE(m2.has_value());
  CHECK(m2->kind == CKind::Two);
  CHECK(m2->x == zero);
  CHECK(m2->y == zero);

  // x* = st falls outside L' = <1,s,t>: the blocks miss each other
  SymBlock tst{one, RatFn::s() * RatFn::t()};
  CHECK_FALSE(block_meet(tw, t00, tst).has_value());
  CHECK(block_meet(full_tower(), t00, tst).has_value());

  CHECK_THROWS_AS(block_meet(tw, t00, t00), std::invalid_argument);
}

TEST_CASE("the crossing triangle witnesses the L' membership verdict") {
  VyWitnessReport bad = mixed_vy_witness(proper_tower());
  CHECK_FALSE(bad.vy_holds);
  CHECK(bad.k == RatFn::s());
  CHECK(bad.kprime == RatFn::t());
  CHECK(bad.x_star == RatFn::s() * RatFn::t());
  CHECK_FALSE(bad.meet_c.has_value());
  CHECK(bad.crossing.a == RatFn::s() / (RatFn::one() + RatFn::s()));
  CHECK_FALSE(bad.narrative.empty());

  VyWitnessReport good = mixed_vy_witness(full_tower());
  CHECK(good.vy_holds);
  CHECK(good.k == RatFn::s());
  CHECK(good.kprime == RatFn::t());
  REQUIRE(good.meet_c.has_value());
  CHECK(good.meet_c->kind == CKind::Two);
  CHECK(good.meet_c->x == good.x_star);
}
