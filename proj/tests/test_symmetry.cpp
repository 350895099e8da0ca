#include <stdexcept>
#include <set>

#include "doctest.h"
#include "gqlab/symmetry.hpp"

using namespace gqlab;

namespace {

const SymplecticGq& w2() {
  static SymplecticGq W = build_symplectic(Gf2n(1));
  return W;
}

}  // namespace

TEST_CASE("collineation plumbing") {
  const IncidenceStructure& S = w2().S;
  Collineation id = identity_collineation(S);
  CHECK(id.is_identity());
  verify_collineation(S, id);
  CHECK(compose(id, id) == id);

  Collineation broken = id;
  std::swap(broken.pmap[0], broken.pmap[1]);  // points only: flags now lie
  CHECK_THROWS_AS(verify_collineation(S, broken), std::logic_error);
}

TEST_CASE("every line of W(2) is an axis, every point a center") {
  const IncidenceStructure& S = w2().S;
  for (std::size_t l = 0; l < S.lines(); ++l) CHECK(is_axis_of_symmetry(S, l));
  for (std::size_t x = 0; x < S.points(); ++x) CHECK(is_center_of_symmetry(S, x));
}

TEST_CASE("symmetries about a line form the full group of order s") {
  const IncidenceStructure& S = w2().S;
  std::vector<Collineation> g = symmetries_about(S, 0);
  REQUIRE(g.size() == 2);  // s = 2, identity included
  std::size_t identities = 0;
  for (const Collineation& c : g) {
    verify_collineation(S, c);
    if (c.is_identity()) ++identities;
    // the axis is fixed pointwise
    S.line_points(0).for_each([&](std::size_t p) { CHECK(c.pmap[p] == p); });
  }
  CHECK(identities == 1);

  // the non-identity symmetry is an involution
  const Collineation& tau = g[0].is_identity() ? g[1] : g[0];
  CHECK(compose(tau, tau).is_identity());
}

TEST_CASE("explicit transport moves the chosen point and fixes the axis") {
  const IncidenceStructure& S = w2().S;
  std::size_t L = 0;
  int pi = S.line_points(L).first();
  REQUIRE(pi >= 0);
  std::size_t p = std::size_t(pi);

  // a line through p other than L, two points on it besides p
  std::size_t M = SIZE_MAX;
  S.point_lines(p).for_each([&](std::size_t l) {
    if (l != L && M == SIZE_MAX) M = l;
  });
  REQUIRE(M != SIZE_MAX);
  std::vector<std::size_t> others;
  S.line_points(M).for_each([&](std::size_t a) {
    if (a != p) others.push_back(a);
  });
  REQUIRE(others.size() == 2);

  Collineation c = build_symmetry(S, L, p, others[0], others[1]);
  CHECK(c.pmap[others[0]] == others[1]);
  S.line_points(L).for_each([&](std::size_t x) { CHECK(c.pmap[x] == x); });
  CHECK(c.lmap[L] == L);
  // lines meeting the axis stay put
  S.line_adj(L).for_each([&](std::size_t l) { CHECK(c.lmap[l] == l); });
  CHECK_FALSE(c.is_identity());

  // a = a' forces the identity
  CHECK(build_symmetry(S, L, p, others[0], others[0]).is_identity());
}

TEST_CASE("the coordinate polarity exists iff the degree is odd") {
  SymplecticGq W2 = build_symplectic(Gf2n(1));
  auto rho2 = find_polarity(W2);
  REQUIRE(rho2.has_value());
  verify_polarity(W2.S, *rho2);

  SymplecticGq W4 = build_symplectic(Gf2n(2));
  CHECK_FALSE(find_polarity(W4).has_value());

  SymplecticGq W8 = build_symplectic(Gf2n(3));
  auto rho8 = find_polarity(W8);
  REQUIRE(rho8.has_value());
  verify_polarity(W8.S, *rho8);
}

TEST_CASE("absolute points of the W(2) polarity form the known ovoid") {
  SymplecticGq W = build_symplectic(Gf2n(1));
  auto rho = find_polarity(W);
  REQUIRE(rho.has_value());
  AbsoluteElements abs = absolute_elements(W.S, *rho);
  CHECK(abs.points.count() == 5);  // q^2 + 1
  CHECK(abs.lines.count() == 5);
  std::set<std::size_t> ids;
  abs.points.for_each([&](std::size_t p) { ids.insert(p); });
  CHECK(ids == std::set<std::size_t>{0, 7, 10, 12, 13});

  // ovoid: one absolute point per line; spot-check the definition
  for (std::size_t l = 0; l < W.S.lines(); ++l)
    CHECK(W.S.line_points(l).intersection_count(abs.points) == 1);
  abs.points.for_each(
      [&](std::size_t p) { CHECK(W.S.incident(p, (*rho).point_to_line[p])); });
}

TEST_CASE("a tampered polarity fails verification") {
  SymplecticGq W = build_symplectic(Gf2n(1));
  Polarity rho = *find_polarity(W);
  std::swap(rho.point_to_line[0], rho.point_to_line[1]);
  CHECK_THROWS_AS(verify_polarity(W.S, rho), std::logic_error);
}

TEST_CASE("centric subquadrangle check on the identity embedding") {
  const IncidenceStructure& S = w2().S;
  std::vector<std::size_t> pe(S.points()), le(S.lines());
  for (std::size_t i = 0; i < pe.size(); ++i) pe[i] = i;
  for (std::size_t i = 0; i < le.size(); ++i) le[i] = i;
  CheckOptions opt;
  opt.exhaustive = true;
  CentricReport r = check_centric_subquadrangle(S, S, pe, le, opt);
  CHECK(r.pass);  // every W(2) triad is centric
  CHECK(r.stats.exhaustive);
  CHECK(r.stats.checked == r.stats.total);
  CHECK(r.stats.total > 0);

  // a grid is not thick, the embedding gate refuses it
  IncidenceStructure grid(9, 6);
  for (std::size_t row = 0; row < 3; ++row)
    for (std::size_t col = 0; col < 3; ++col) {
      grid.add_flag(row * 3 + col, row);
      grid.add_flag(row * 3 + col, 3 + col);
    }
  grid.freeze();
  std::vector<std::size_t> gp(9), gl(6);
  CHECK_THROWS_AS(check_centric_subquadrangle(S, grid, gp, gl, opt),
                  std::invalid_argument);
}
