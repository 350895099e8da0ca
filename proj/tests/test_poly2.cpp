#include <stdexcept>
#include "doctest.h"
#include "gqlab/mixed.hpp"
#include "gqlab/poly2.hpp"
#include "gqlab/rational.hpp"

using gqlab::Poly2;
using gqlab::RatFn;
using gqlab::UPoly;

TEST_CASE("univariate arithmetic in characteristic 2") {
  UPoly x = UPoly::monomial(1);
  UPoly p = x * x + x + UPoly::one();
  CHECK(p.degree() == 2);
  CHECK((p + p).is_zero());
  UPoly q, r;
  UPoly::divmod(p * p + x, p, q, r);
  CHECK(q == p);
  CHECK(r == x);
  CHECK(UPoly::gcd(p * x, p * (x + UPoly::one())) == p);
  CHECK(p.divided_exactly(x) == std::nullopt);
  CHECK((p * x).divided_exactly(x) == p);
}

TEST_CASE("bivariate product and string forms") {
  Poly2 p = Poly2::s() * Poly2::t() + Poly2::s() + Poly2::one();
  CHECK(p.term_count() == 3);
  CHECK(p.to_string() == "st+s+1");
  CHECK(Poly2::parse("st+s+1") == p);
  CHECK(Poly2::parse("0")->is_zero());
  Poly2 sq = p * p;
  // squaring is monomial-wise in characteristic 2
  CHECK(sq == Poly2::monomial(2, 2) + Poly2::monomial(2, 0) + Poly2::one());
}

TEST_CASE("parity decomposition is exact and unique") {
  Poly2 p = Poly2::parse("s3t2+s2t+st+s+t+1").value();
  auto parts = p.parity_decompose();
  CHECK(Poly2::parity_compose(parts) == p);
  // p has monomials in all four parity classes
  CHECK(p.parity_class_mask() == 0xF);
  CHECK(Poly2::s().parity_class_mask() == 0b0010);
  CHECK(Poly2::t().parity_class_mask() == 0b0100);
  CHECK((Poly2::s() * Poly2::t()).parity_class_mask() == 0b1000);
  CHECK(Poly2::one().parity_class_mask() == 0b0001);
}

TEST_CASE("gcd of bivariates and exact division") {
  Poly2 g = Poly2::parse("st+1").value();
  Poly2 a = g * Poly2::parse("s2+t").value();
  Poly2 b = g * Poly2::parse("s+1").value();
  Poly2 d = Poly2::gcd(a, b);
  CHECK(a.divided_exactly(d).has_value());
  CHECK(b.divided_exactly(d).has_value());
  CHECK(d.divided_exactly(g).has_value());  // gcd holds the common factor
}

TEST_CASE("rational functions reduce to lowest terms") {
  RatFn x = RatFn::of(Poly2::parse("s2t+s").value(),
                      Poly2::parse("st+1").value() * Poly2::s());
  // numerator s(st+1) over s(st+1): the whole thing is 1
  CHECK(x == RatFn::one());
  RatFn y = RatFn::s() / RatFn::t();
  CHECK(y * RatFn::t() == RatFn::s());
  CHECK((y + y).is_zero());
  CHECK(y.inv() == RatFn::t() / RatFn::s());
  CHECK_THROWS_AS((void)RatFn::zero().inv(), std::domain_error);
}

TEST_CASE("evaluation agrees with field arithmetic") {
  gqlab::Gf2n f(3);
  Poly2 p = Poly2::parse("s2t+st+s+1").value();
  for (uint32_t sv = 0; sv < 8; ++sv)
    for (uint32_t tv = 0; tv < 8; ++tv) {
      uint32_t want = f.add(
          f.add(f.mul(f.mul(f.sqr(sv), tv), 1), f.mul(sv, tv)),
          f.add(sv, 1));
      CHECK(p.eval(f, sv, tv) == want);
    }
}

TEST_CASE("sparse text round-trips through the mixed module") {
  RatFn x = RatFn::of(Poly2::parse("s3+t").value(), Poly2::parse("st+1").value());
  auto back = gqlab::parse_sparse(gqlab::to_sparse(x));
  REQUIRE(back.has_value());
  CHECK(*back == x);
  CHECK(gqlab::parse_sparse("0")->is_zero());
  CHECK_FALSE(gqlab::parse_sparse("not a poly").has_value());
}
