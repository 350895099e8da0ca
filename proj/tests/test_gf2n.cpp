#include <stdexcept>
#include <set>

#include "doctest.h"
#include "gqlab/gf2n.hpp"

using gqlab::Gf2n;

TEST_CASE("GF(4) multiplication against the hand table") {
  // modulus x^2+x+1: codes 0,1,2=x,3=x+1
  Gf2n f(2);
  CHECK(f.order() == 4);
  // x*x = x+1, x*(x+1) = 1, (x+1)*(x+1) = x
  CHECK(f.mul(2, 2) == 3);
  CHECK(f.mul(2, 3) == 1);
  CHECK(f.mul(3, 3) == 2);
  CHECK(f.mul(0, 3) == 0);
  CHECK(f.mul(1, 3) == 3);
  CHECK(f.add(2, 3) == 1);
}

TEST_CASE("GF(8) field laws, exhaustive") {
  Gf2n f(3);
  for (uint32_t a = 0; a < 8; ++a)
    for (uint32_t b = 0; b < 8; ++b) {
      CHECK(f.mul(a, b) == f.mul(b, a));
      for (uint32_t c = 0; c < 8; ++c) {
        CHECK(f.mul(f.mul(a, b), c) == f.mul(a, f.mul(b, c)));
        CHECK(f.mul(a, f.add(b, c)) == f.add(f.mul(a, b), f.mul(a, c)));
      }
    }
  for (uint32_t a = 1; a < 8; ++a) {
    CHECK(f.mul(a, f.inv(a)) == 1);
    CHECK(f.pow(a, 7) == 1);  // multiplicative group order
  }
  CHECK_THROWS_AS((void)f.inv(0), std::domain_error);
}

TEST_CASE("pow matches repeated multiplication") {
  Gf2n f(4);
  for (uint32_t a = 1; a < 16; ++a) {
    uint32_t acc = 1;
    for (unsigned e = 0; e < 16; ++e) {
      CHECK(f.pow(a, e) == acc);
      acc = f.mul(acc, a);
    }
  }
}

TEST_CASE("element strings round-trip") {
  Gf2n f(3);
  for (uint32_t a = 0; a < 8; ++a) {
    auto back = f.parse(f.to_string(a));
    REQUIRE(back.has_value());
    CHECK(*back == a);
  }
  CHECK_FALSE(f.parse("9").has_value());   // outside the field
  CHECK_FALSE(f.parse("zz").has_value());
}

TEST_CASE("square root of Frobenius exists exactly for odd degree") {
  Gf2n f2(1), f4(2), f16(4);  // the endomorphism keeps a pointer to the field
  auto t1 = gqlab::tits_endomorphism(f2);
  REQUIRE(t1.has_value());
  CHECK(t1->theta(1) == 1);  // identity on GF(2)

  CHECK_FALSE(gqlab::tits_endomorphism(f4).has_value());
  CHECK_FALSE(gqlab::tits_endomorphism(f16).has_value());

  Gf2n f8(3);
  auto t3 = gqlab::tits_endomorphism(f8);
  REQUIRE(t3.has_value());
  for (uint32_t a = 0; a < 8; ++a) {
    CHECK(t3->theta(t3->theta(a)) == f8.frobenius(a));
    CHECK(t3->theta(t3->theta_inv(a)) == a);
    CHECK(t3->theta_inv(t3->theta(a)) == a);
    // theta is additive and multiplicative
    for (uint32_t b = 0; b < 8; ++b) {
      CHECK(t3->theta(f8.add(a, b)) == f8.add(t3->theta(a), t3->theta(b)));
      CHECK(t3->theta(f8.mul(a, b)) == f8.mul(t3->theta(a), t3->theta(b)));
    }
  }
}

TEST_CASE("bad modulus is rejected") {
  CHECK_THROWS_AS(Gf2n(3, 0b1001), std::invalid_argument);  // x^3+1 reducible
  Gf2n ok(3, 0b1101);  // x^3+x^2+1, the other irreducible cubic
  std::set<uint32_t> seen;
  for (uint32_t a = 1; a < 8; ++a) seen.insert(ok.mul(a, 3));
  CHECK(seen.size() == 7);  // multiplication by a unit permutes the units
}
